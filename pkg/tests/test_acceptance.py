"""Acceptance battery.

Eleven numbered criteria, one test each, in order.  Every test prints a
single [PASS]/[FAIL] line outside pytest's capture so the run log shows the
verdict per criterion even under `pytest -v`.
"""

import math
import random
import time
from functools import lru_cache

import pytest

from latpoly import census, equivalence, families, linalg
from latpoly.polytope import convex_hull

from conftest import PICK_STATS


@pytest.fixture()
def report(capsys):
    def _report(criterion: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        with capsys.disabled():
            print(line, flush=True)
        assert ok, line

    return _report


# -- 1. signed permutation groups ------------------------------------------------


def test_criterion_01_signed_permutation_group_orders(report):
    t0 = time.time()
    expected = {1: 2, 2: 8, 3: 48, 4: 384, 5: 3840}
    orders = {}
    closures = {}
    for d, want in expected.items():
        g = equivalence.generate_O_d(d)
        orders[d] = g.order
        closures[d] = g.validate_closure()
    elapsed = time.time() - t0
    ok = orders == expected and all(closures.values()) and elapsed < 10
    report(
        "criterion 1 (signed permutation group orders)",
        ok,
        f"orders {orders}, closure {all(closures.values())}, {elapsed:.1f}s",
    )


# -- 2. ball polytope symmetry groups --------------------------------------------


def test_criterion_02_ball_polytope_groups_equal_signed_permutations(report):
    t0 = time.time()
    failures = []
    cases = 0
    for d in (2, 3):
        target = set(equivalence.generate_O_d(d).elements)
        for m in (1, 2, 3):
            for rho in (1, 2, 3, math.inf):
                cases += 1
                p = families.ball_polytope(d, m, rho)
                g = set(equivalence.unimodular_group(p).elements)
                go = set(equivalence.orthogonal_unimodular_group(p).elements)
                if g != target or go != target:
                    failures.append((d, m, rho, len(g), len(go)))
    elapsed = time.time() - t0
    ok = not failures and cases == 24 and elapsed < 300
    report(
        "criterion 2 (ball polytope groups)",
        ok,
        f"{cases} cases, failures {failures}, {elapsed:.1f}s",
    )


# -- 3. corner simplex groups ------------------------------------------------------


def test_criterion_03_simplex_group_orders(report):
    got = {}
    for d in (2, 3, 4):
        simplex = convex_hull(
            [(0,) * d] + [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)],
            d,
        )
        full = equivalence.unimodular_group(simplex).order
        orth = equivalence.orthogonal_unimodular_group(simplex).order
        got[d] = (full, orth)
    want = {2: (6, 2), 3: (24, 6), 4: (120, 24)}
    report(
        "criterion 3 (simplex group orders)",
        got == want,
        f"(|G|, |G'|) by dimension: {got}",
    )


# -- 4. conjugation transports groups ----------------------------------------------


def _random_pool_polytope(rng, d):
    while True:
        pts = {
            tuple(rng.randint(-3, 3) for _ in range(d))
            for _ in range(rng.randint(d + 1, d + 4))
        }
        try:
            return convex_hull(pts, d)
        except Exception:
            continue


def _random_unimodular(rng, d):
    sigma = linalg.identity_map(d)
    for _ in range(3):
        i, j = rng.sample(range(d), 2)
        mat = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
        mat[i][j] = rng.randint(-2, 2)
        sigma = linalg.compose(sigma, linalg.UnimodularMap(mat, (0,) * d))
    return linalg.compose(
        sigma, linalg.translation_map(tuple(rng.randint(-4, 4) for _ in range(d)))
    )


def test_criterion_04_conjugation_property(report):
    rng = random.Random(2024)
    bad = 0
    checked = 0
    for i in range(50):
        d = 2 if i % 3 else 3
        p = _random_pool_polytope(rng, d)
        g = equivalence.unimodular_group(p)
        for _ in range(20):
            sigma = _random_unimodular(rng, d)
            q = p.transform(sigma)
            direct = set(equivalence.unimodular_group(q).elements)
            conj = set(equivalence.conjugate_group(g, sigma).elements)
            checked += 1
            if direct != conj:
                bad += 1
    report(
        "criterion 4 (conjugation transports symmetry groups)",
        bad == 0 and checked == 1000,
        f"{checked} polytope/map pairs, {bad} mismatches",
    )


# -- 5. divisibility for centrally symmetric polytopes ------------------------------


def _symmetric_corpus():
    corpus = []
    for d in (1, 2, 3, 4):
        cross = [
            tuple(s if j == i else 0 for j in range(d))
            for i in range(d)
            for s in (1, -1)
        ]
        corpus.append(convex_hull(cross, d))
        cube = [tuple(p) for p in __import__("itertools").product((-1, 1), repeat=d)]
        corpus.append(convex_hull(cube, d))
        stretched = [tuple(3 * c if i == 0 else c for i, c in enumerate(v)) for v in cross]
        corpus.append(convex_hull(stretched, d))
    rng = random.Random(7)
    for d in (2, 3, 4):
        for _ in range(4):
            half = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(d + 3)]
            pts = half + [tuple(-c for c in v) for v in half]
            try:
                corpus.append(convex_hull(pts, d))
            except Exception:
                continue
    # the 24-cell: cross-polytope plus half-integer-style vertices scaled in Z^4
    twenty_four = [
        tuple(s if j == i else 0 for j in range(4)) for i in range(4) for s in (2, -2)
    ] + [tuple(p) for p in __import__("itertools").product((-1, 1), repeat=4)]
    corpus.append(convex_hull(twenty_four, 4))
    corpus.append(families.build_symmetric_polytope(2, 187).polytope)
    return corpus


def test_criterion_05_divisibility_bound(report):
    corpus = _symmetric_corpus()
    reports = [equivalence.divides_bound(p) for p in corpus]
    bad = [
        (p.dim, rep.order, rep.bound)
        for p, rep in zip(corpus, reports)
        if not rep.divides
    ]
    report(
        "criterion 5 (orthogonal group order divides 2^d d!)",
        len(corpus) >= 20 and not bad,
        f"{len(corpus)} symmetric polytopes, violations {bad}",
    )


# -- 6. peel sweep -----------------------------------------------------------------


def test_criterion_06_peel_every_feasible_count(report):
    t0 = time.time()
    failures = []
    total = 0
    for r in (3, 4, 5):
        env = families.envelope_half_hull(2, r)
        core = families.core_half_hull(2, r)
        env_pts = set(env.lattice_points())
        core_pts = set(core.lattice_points())
        guard = 3 * r * len(families.base_disk_points(2, r + 1))
        top = min(guard, families.peel_capacity(2, r))
        for k in range(top + 1):
            total += 1
            peeled = families.peel(env, core, k)
            pts = set(peeled.lattice_points())
            if len(pts) != len(core_pts) + k or not (core_pts <= pts <= env_pts):
                failures.append((r, k))
    elapsed = time.time() - t0
    ok = not failures and elapsed < 120
    report(
        "criterion 6 (peel sweep r=3,4,5)",
        ok,
        f"{total} peel instances, failures {failures}, {elapsed:.1f}s",
    )


# -- 7. prescribed-cardinality families ---------------------------------------------

FEASIBLE_2D = (187, 189, 191, 193, 353, 355, 357, 359, 361, 363)
SMALLEST_3D = 309
SUBSET_LIMIT_3D = 64


@lru_cache(maxsize=None)
def _family_members(d: int, w: int, limit):
    return tuple(families.symmetric_family(d, w, limit))


def _check_family(d, w, limit, failures):
    plan = families.plan_construction(d, w)
    members = _family_members(d, w, limit)
    e_d = (0,) * (d - 1) + (1,)
    for member in members:
        p = member.polytope
        if p.n_points() != w:
            failures.append((d, w, "cardinality", p.n_points()))
        if p.symmetry_center() != (0,) * d:
            failures.append((d, w, "center", p.symmetry_center()))
        best, dirs = p.lattice_diameter()
        if best != 2 * plan.r**2 + 1 or dirs != (e_d,):
            failures.append((d, w, "diameter", (best, dirs)))
    forms = {equivalence.canonical_form(m.polytope) for m in members}
    floor = families.class_floor(d, plan.family_size)
    if len(forms) < floor:
        failures.append((d, w, "classes", (len(forms), floor)))
    return len(members), len(forms), floor


def test_criterion_07_family_pipeline(report):
    t0 = time.time()
    failures = []
    built = 0
    summary = []
    for w in FEASIBLE_2D:
        n, classes, floor = _check_family(2, w, None, failures)
        built += n
        summary.append(f"w={w}: {n} members, {classes} classes (floor {floor})")
    n3, classes3, floor3 = _check_family(3, SMALLEST_3D, SUBSET_LIMIT_3D, failures)
    built += n3
    summary.append(
        f"d=3 w={SMALLEST_3D}: {n3} members, {classes3} classes (floor {floor3})"
    )
    elapsed = time.time() - t0
    ok = not failures and elapsed < 900
    report(
        "criterion 7 (prescribed-cardinality families)",
        ok,
        f"{built} members over 11 runs, failures {failures}, {elapsed:.1f}s",
    )


# -- 8. slice maximality -------------------------------------------------------------


def test_criterion_08_slice_maximality(report):
    t0 = time.time()
    bad = []
    checked = 0
    for w in FEASIBLE_2D:
        for member in _family_members(2, w, None):
            checked += 1
            check = families.slice_maximality_audit(member, samples=100, seed=checked)
            if not check.ok:
                bad.append((2, w, check.detail))
    for member in _family_members(3, SMALLEST_3D, SUBSET_LIMIT_3D):
        checked += 1
        check = families.slice_maximality_audit(member, samples=100, seed=checked)
        if not check.ok:
            bad.append((3, SMALLEST_3D, check.detail))
    elapsed = time.time() - t0
    report(
        "criterion 8 (central slice beats 100 sampled normals)",
        not bad,
        f"{checked} members audited, failures {bad}, {elapsed:.1f}s",
    )


# -- 9. census two-oracle agreement ---------------------------------------------------

NVOL_COUNTS = {1: 1, 2: 2, 3: 3, 4: 7, 5: 6, 6: 13}
NVOL_SYM_COUNTS = {1: 0, 2: 0, 3: 0, 4: 1, 5: 0, 6: 1}
CARD_COUNTS = {3: 1, 4: 3, 5: 6, 6: 13, 7: 21, 8: 41, 9: 67, 10: 111, 11: 175, 12: 286}
CARD_SYM_COUNTS = {3: 0, 4: 0, 5: 1, 6: 0, 7: 2, 8: 0, 9: 3, 10: 0, 11: 5, 12: 0}
CARD_INT_COUNTS = {3: 0, 4: 1, 5: 4, 6: 9, 7: 18, 8: 37, 9: 63, 10: 106, 11: 170, 12: 280}


def test_criterion_09_census_two_oracle_agreement(report):
    t0 = time.time()
    failures = []
    batteries = (
        ("normalized_volume", "none", NVOL_COUNTS),
        ("normalized_volume", "centrally_symmetric", NVOL_SYM_COUNTS),
        ("cardinality", "none", CARD_COUNTS),
        ("cardinality", "centrally_symmetric", CARD_SYM_COUNTS),
        ("cardinality", "nonempty_interior", CARD_INT_COUNTS),
    )
    rows = 0
    for statistic, constraint, table in batteries:
        for value, expected in table.items():
            rows += 1
            query = census.CensusQuery(statistic, value, constraint)
            rec = census.enumerate_classes(query)
            if not rec.stable:
                failures.append((statistic, value, constraint, "unstable"))
            if rec.class_count != expected:
                failures.append(
                    (statistic, value, constraint, rec.class_count, expected)
                )
            try:
                census.census_crosscheck(query)
            except Exception as exc:  # disagreement is a hard failure
                failures.append((statistic, value, constraint, repr(exc)))
    # parity rows vanish: centrally symmetric needs even volume / odd count
    parity_ok = all(
        NVOL_SYM_COUNTS[m] == 0 for m in NVOL_SYM_COUNTS if m % 2 == 1
    ) and all(CARD_SYM_COUNTS[w] == 0 for w in CARD_SYM_COUNTS if w % 2 == 0)
    elapsed = time.time() - t0
    ok = not failures and parity_ok and elapsed < 1800
    report(
        "criterion 9 (census two-oracle agreement)",
        ok,
        f"{rows} query rows crosschecked, failures {failures}, {elapsed:.1f}s",
    )


# -- 10. continuous-model trend --------------------------------------------------------


def test_criterion_10_continuous_model_trend(report):
    c1 = families.continuous_model(2, 1).c1
    ratios = {}
    for r in (8, 12, 16):
        count = families.paraboloid_hull(2, r).n_points()
        ratios[r] = count / (c1 * r**3)
    in_band = all(0.8 <= x <= 1.3 for x in ratios.values())
    deviations = [abs(ratios[r] - 1) for r in (8, 12, 16)]
    monotone = all(a >= b for a, b in zip(deviations, deviations[1:]))
    exact = all(families.continuous_model(d, 1).c1_lt_c2() for d in (2, 3, 4))
    report(
        "criterion 10 (continuous-model trend)",
        in_band and monotone and exact,
        f"ratios {dict((r, round(x, 5)) for r, x in ratios.items())}, "
        f"deviations nonincreasing {monotone}, exact c1<c2 for d=2,3,4 {exact}",
    )


# -- 11. suite-wide area identity -------------------------------------------------------


def test_criterion_11_area_identity_hook(report):
    before = PICK_STATS["checked"]
    rng = random.Random(99)
    built = 0
    while built < 20:
        pts = {(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(6)}
        try:
            convex_hull(pts, 2)
        except Exception:
            continue
        built += 1
    after = PICK_STATS["checked"]
    report(
        "criterion 11 (area identity on every 2-D construction)",
        after >= before + 20 and after > 0,
        f"{after} polygons checked against the boundary point identity so far",
    )
