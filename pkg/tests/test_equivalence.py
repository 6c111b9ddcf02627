"""Witness maps, symmetry groups, canonical forms, divisibility."""

import random

import pytest

from latpoly import equivalence, linalg
from latpoly.errors import DimensionMismatchError, NotCentrallySymmetricError
from latpoly.polytope import convex_hull


def _square():
    return convex_hull([(1, 1), (1, -1), (-1, 1), (-1, -1)], 2)


def _triangle():
    return convex_hull([(0, 0), (1, 0), (0, 1)], 2)


def _random_map(rng, d):
    sigma = linalg.identity_map(d)
    for _ in range(4):
        i, j = rng.sample(range(d), 2)
        mat = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
        mat[i][j] = rng.randint(-2, 2)
        sigma = linalg.compose(sigma, linalg.UnimodularMap(mat, (0,) * d))
    shift = tuple(rng.randint(-3, 3) for _ in range(d))
    return linalg.compose(sigma, linalg.translation_map(shift))


def test_find_map_returns_verified_witness():
    rng = random.Random(5)
    p = convex_hull([(0, 0), (3, 0), (0, 2), (3, 2)], 2)
    sigma = _random_map(rng, 2)
    q = p.transform(sigma)
    found = equivalence.find_map(p, q)
    assert found is not None
    assert {found(z) for z in p.lattice_points()} == set(q.lattice_points())


def test_are_equivalent_returns_map_or_none():
    assert equivalence.are_equivalent(_square(), _triangle()) is None
    w = equivalence.are_equivalent(_square(), _square().translate((4, 4)))
    assert isinstance(w, linalg.UnimodularMap)


def test_equivalence_distinguishes_equal_volume_pairs():
    # both have normalized volume 2 and 4 lattice points, but one is a
    # triangle and the other a parallelogram
    tri = convex_hull([(0, 0), (2, 0), (0, 1)], 2)
    par = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)], 2)
    assert tri.normalized_volume() == par.normalized_volume() == 2
    assert tri.n_points() == par.n_points() == 4
    assert equivalence.are_equivalent(tri, par) is None


def test_unimodular_group_of_square_and_simplex():
    assert equivalence.unimodular_group(_square()).order == 8
    assert equivalence.unimodular_group(_triangle()).order == 6  # (d+1)!
    assert equivalence.orthogonal_unimodular_group(_triangle()).order == 2  # d!


def test_group_closure_validates():
    g = equivalence.unimodular_group(_square())
    assert g.validate_closure()


def test_unimodular_group_translated_polytope():
    # symmetry survives moving the polytope off the origin
    p = _square().translate((7, -3))
    assert equivalence.unimodular_group(p).order == 8


def test_generate_O_d_orders_and_bounds():
    assert equivalence.generate_O_d(1).order == 2
    assert equivalence.generate_O_d(2).order == 8
    assert equivalence.generate_O_d(3).order == 48
    with pytest.raises(DimensionMismatchError):
        equivalence.generate_O_d(0)
    with pytest.raises(DimensionMismatchError):
        equivalence.generate_O_d(7)


def test_conjugate_group_transports_symmetries():
    rng = random.Random(11)
    p = _square()
    g = equivalence.unimodular_group(p)
    sigma = _random_map(rng, 2)
    q = p.transform(sigma)
    conj = equivalence.conjugate_group(g, sigma)
    direct = equivalence.unimodular_group(q)
    assert set(conj.elements) == set(direct.elements)


def test_divides_bound_symmetric_and_not():
    rep = equivalence.divides_bound(_square())
    assert rep.order == 8 and rep.bound == 8 and rep.divides
    octa = convex_hull(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], 3
    )
    rep3 = equivalence.divides_bound(octa)
    assert rep3.order == 48 and rep3.bound == 48 and rep3.divides
    with pytest.raises(NotCentrallySymmetricError):
        equivalence.divides_bound(_triangle())


def test_canonical_form_equal_iff_equivalent():
    rng = random.Random(3)
    p = convex_hull([(0, 0), (2, 0), (1, 3)], 2)
    q = p.transform(_random_map(rng, 2))
    assert equivalence.canonical_form(p) == equivalence.canonical_form(q)
    other = convex_hull([(0, 0), (2, 0), (1, 4)], 2)
    assert equivalence.canonical_form(p) != equivalence.canonical_form(other)


def test_canonical_form_is_hex_string():
    form = equivalence.canonical_form(_triangle())
    int(form, 16)  # parses as hexadecimal
    assert form == equivalence.canonical_form(_triangle())


def test_partition_classes_mixed_bag():
    rng = random.Random(9)
    tri = _triangle()
    sq = _square()
    polys = [tri, sq]
    for _ in range(3):
        polys.append(tri.transform(_random_map(rng, 2)))
        polys.append(sq.transform(_random_map(rng, 2)))
    classes = equivalence.partition_classes(polys)
    assert len(classes) == 2
    sizes = sorted(len(c) for c in classes)
    assert sizes == [4, 4]


def test_vertex_profiles_invariant_under_maps():
    rng = random.Random(21)
    p = convex_hull([(0, 0), (3, 0), (0, 2), (2, 2)], 2)
    sigma = _random_map(rng, 2)
    q = p.transform(sigma)
    prof_p = sorted(map(str, equivalence.vertex_profiles(p).values()))
    prof_q = sorted(map(str, equivalence.vertex_profiles(q).values()))
    assert prof_p == prof_q


def test_three_dimensional_witness():
    rng = random.Random(2)
    cube = convex_hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)], 3)
    sigma = _random_map(rng, 3)
    q = cube.transform(sigma)
    w = equivalence.find_map(cube, q)
    assert w is not None
    assert {w(v) for v in cube.vertices} == set(q.vertices)
