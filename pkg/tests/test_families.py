"""Cap/disk/cylinder constructions, peeling, the symmetric family pipeline,
and the exact continuous-model constants.

Expected counts were derived by direct hand enumeration of the defining
inequalities before being frozen here; the suite re-derives them through the
library and the hull machinery.
"""

import math
from fractions import Fraction

import pytest

from latpoly import equivalence, families
from latpoly.errors import (
    ConstructionFailureError,
    DegenerateInputError,
    DimensionMismatchError,
    ResourceCapError,
)

# |hull of cap points| for d=2, r=1..6
CAP_CARDS_2D = {1: 4, 2: 15, 3: 42, 4: 93, 5: 176, 6: 299}
# |hull of cap points| for d=3, r=1..3
CAP_CARDS_3D = {1: 6, 2: 37, 3: 154}
# envelope / core half-hull cardinalities and their difference, d=2
ENVELOPE_2D = {1: 3, 2: 10, 3: 29, 4: 66, 5: 127}
CORE_2D = {1: 3, 2: 10, 3: 26, 4: 55, 5: 101}

FEASIBLE_2D = [187, 189, 191, 193, 353, 355, 357, 359, 361, 363]


def test_ball_polytope_small_cases():
    cross = families.ball_polytope(2, 1, 1)
    assert cross.n_points() == 5
    assert cross.vertices == ((-1, 0), (0, -1), (0, 1), (1, 0))
    cube = families.ball_polytope(2, 1, math.inf)
    assert cube.n_points() == 9
    disk = families.ball_polytope(2, 2, 2)
    assert disk.n_points() == 13
    assert families.ball_polytope(3, 1, 1).n_points() == 7


def test_ball_polytope_accepts_inf_spellings():
    a = families.ball_polytope(2, 2, "inf")
    b = families.ball_polytope(2, 2, "oo")
    c = families.ball_polytope(2, 2, math.inf)
    assert a == b == c
    assert a.n_points() == 25


def test_ball_polytope_rejects_bad_input():
    with pytest.raises(DimensionMismatchError):
        families.ball_polytope(0, 1, 2)
    with pytest.raises(DegenerateInputError):
        families.ball_polytope(2, 0, 2)
    with pytest.raises(DegenerateInputError):
        families.ball_polytope(2, 1, 0)


def test_cap_point_counts_2d():
    for r, expected in CAP_CARDS_2D.items():
        assert len(families.paraboloid_cap_points(2, r)) == expected
        assert families.paraboloid_hull(2, r).n_points() == expected


def test_cap_point_counts_3d():
    for r, expected in CAP_CARDS_3D.items():
        assert families.paraboloid_hull(3, r).n_points() == expected


def test_cap_hull_keeps_every_cap_point():
    # the hull of the cap's integer points must add nothing
    hull = families.paraboloid_hull(2, 4)
    assert set(hull.lattice_points()) == set(families.paraboloid_cap_points(2, 4))


def test_base_disk_counts():
    assert [len(families.base_disk_points(2, r)) for r in range(1, 7)] == [
        3, 5, 7, 9, 11, 13,
    ]
    assert [len(families.base_disk_points(3, r)) for r in range(1, 5)] == [
        5, 13, 29, 49,
    ]


def test_base_disk_lies_in_cap():
    cap = set(families.paraboloid_cap_points(2, 3))
    assert set(families.base_disk_points(2, 3)) <= cap


def test_envelope_and_core_cardinalities():
    for r, expected in ENVELOPE_2D.items():
        assert families.envelope_half_hull(2, r).n_points() == expected
    for r, expected in CORE_2D.items():
        assert families.core_half_hull(2, r).n_points() == expected
    for r in ENVELOPE_2D:
        assert families.peel_capacity(2, r) == ENVELOPE_2D[r] - CORE_2D[r]


def test_core_inside_envelope():
    for r in (2, 3, 4):
        env = families.envelope_half_hull(2, r)
        core = families.core_half_hull(2, r)
        assert set(core.lattice_points()) <= set(env.lattice_points())


def test_marked_vertices_exact_sets():
    assert families.marked_vertices(2, 2) == ((1, 3),)
    assert families.marked_vertices(2, 3) == ((1, 8), (2, 5))
    assert families.marked_vertices(2, 4) == ((1, 15), (2, 12), (3, 7))
    assert len(families.marked_vertices(2, 5)) == 4
    # every marked vertex is a hull vertex with positive first coordinate
    hull = families.paraboloid_hull(2, 4)
    for v in families.marked_vertices(2, 4):
        assert v in hull.vertices
        assert v[0] >= 1 and v[-1] != 0


def test_peel_sweep_small():
    env = families.envelope_half_hull(2, 4)
    core = families.core_half_hull(2, 4)
    env_pts = set(env.lattice_points())
    core_pts = set(core.lattice_points())
    for k in range(families.peel_capacity(2, 4) + 1):
        peeled = families.peel(env, core, k)
        pts = set(peeled.lattice_points())
        assert len(pts) == len(core_pts) + k
        assert core_pts <= pts <= env_pts


def test_peel_rejects_out_of_range():
    env = families.envelope_half_hull(2, 3)
    core = families.core_half_hull(2, 3)
    with pytest.raises(ConstructionFailureError) as e:
        families.peel(env, core, families.peel_capacity(2, 3) + 1)
    assert e.value.tag == "Lemma4"


def test_choose_radius_failure_tags():
    with pytest.raises(ConstructionFailureError) as even:
        families.plan_construction(2, 188)
    assert even.value.tag == "Eq30"
    with pytest.raises(ConstructionFailureError) as tiny:
        families.plan_construction(2, 5)
    assert tiny.value.tag == "Eq27"
    # w=31 selects r=2, whose envelope equals its core: no peel capacity
    with pytest.raises(ConstructionFailureError) as cap:
        families.plan_construction(2, 31)
    assert cap.value.tag == "Eq25"


def test_plan_construction_values():
    plan = families.plan_construction(2, 187)
    assert plan.r == 4
    assert plan.u == 187 - 2 * CAP_CARDS_2D[4] + 9
    assert plan.marked == families.marked_vertices(2, 4)
    assert plan.family_size == 8
    assert all(c.ok for c in plan.checks)


def test_build_symmetric_polytope_hits_cardinality():
    member = families.build_symmetric_polytope(2, 187)
    p = member.polytope
    assert p.n_points() == 187
    assert p.symmetry_center() == (0, 0)
    best, dirs = p.lattice_diameter()
    assert best == 2 * 4 * 4 + 1
    assert dirs == ((0, 1),)
    assert all(c.ok for c in member.checks)


def test_build_rejects_non_marked_marks():
    with pytest.raises(DegenerateInputError):
        families.build_symmetric_polytope(2, 187, marks=[(9, 9)])


def test_family_members_distinct_classes():
    members = families.symmetric_family(2, 187)
    assert len(members) == 8
    assert all(m.polytope.n_points() == 187 for m in members)
    forms = {equivalence.canonical_form(m.polytope) for m in members}
    assert len(forms) >= families.class_floor(2, len(members))
    # marks differ, so the polytopes should too
    assert len({m.polytope for m in members}) == 8


def test_class_floor():
    # bound is ceil(n / (2^d * (d-1)!))
    assert families.class_floor(2, 8) == 2
    assert families.class_floor(2, 16) == 4
    assert families.class_floor(3, 1024) == math.ceil(1024 / 16)


def test_feasible_widths_prefix():
    assert families.feasible_widths(2, count=4) == FEASIBLE_2D[:4]


def test_feasible_widths_raises_when_exhausted():
    with pytest.raises(ResourceCapError):
        families.feasible_widths(2, count=1, max_width=100)


def test_slice_maximality_audit():
    member = families.build_symmetric_polytope(2, 189, marks=((1, 15),))
    check = families.slice_maximality_audit(member, samples=25, seed=1)
    assert check.ok, check.detail


def test_continuous_model_exact_constants():
    m2 = families.continuous_model(2, 5)
    assert (m2.c1_coeff, m2.c1_pi_half_pow) == (Fraction(4, 3), 0)
    assert (m2.c2_coeff, m2.c2_pi_half_pow) == (Fraction(2), 0)
    m3 = families.continuous_model(3, 5)
    assert (m3.c1_coeff, m3.c1_pi_half_pow) == (Fraction(1, 2), 2)
    assert (m3.c2_coeff, m3.c2_pi_half_pow) == (Fraction(3, 4), 2)
    m4 = families.continuous_model(4, 5)
    assert (m4.c1_coeff, m4.c1_pi_half_pow) == (Fraction(8, 15), 2)
    assert (m4.c2_coeff, m4.c2_pi_half_pow) == (Fraction(4, 5), 2)
    for model in (m2, m3, m4):
        assert model.c1_lt_c2()


def test_continuous_model_tracks_radius():
    m = families.continuous_model(2, 3)
    assert m.cap_volume == Fraction(4, 3) * 27
    assert m.cylinder_volume == Fraction(2) * 27


def test_cardinality_ratio_trend():
    # |cap hull| / (c1 * r^3) approaches 1 from above as r grows
    ratios = []
    for r, count in ((8, 697), (12, 2325), (16, 5489)):
        assert families.paraboloid_hull(2, r).n_points() == count
        ratios.append(count / (float(Fraction(4, 3)) * r**3))
    deviations = [abs(x - 1) for x in ratios]
    assert deviations == sorted(deviations, reverse=True)
    assert all(0.8 <= x <= 1.3 for x in ratios)
