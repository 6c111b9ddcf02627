"""Parametric polytope families and the symmetric target-cardinality builder.

Everything here is exact integer geometry except `continuous_model`, which
evaluates closed-form volume constants (the one place floats are allowed).

The centerpiece builds, for odd w, a centrally symmetric lattice polytope with
exactly w lattice points, assembled from a paraboloid-cap hull:

  1. pick the radius r whose cap hull brackets w/2 (`choose_radius`),
  2. measure the even surplus u = w - 2|cap hull| + |base disk| and
     optionally delete a subset of "marked" cap vertices (`marked_vertices`),
  3. peel a one-sided envelope hull down to a prescribed count while keeping
     a core hull inside (`peel`),
  4. glue the peeled half to the pruned cap and symmetrize through the origin.

Every step re-verifies its cardinality and convexity claims on enumerated
point sets and raises ConstructionFailureError with an opaque check tag
(``Eq27``, ``Eq30``, ... ``Eq40``, ``Lemma4``, ``DiamMax``) when one fails;
the tags also label the diagnostics trail kept on each built member.  Varying
the deleted subset produces families that are large relative to the number of
equivalence classes they can fall into, which is what makes the count of
classes at fixed cardinality grow quickly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from . import caps
from .errors import (
    ConstructionFailureError,
    DegenerateInputError,
    DimensionMismatchError,
    ResourceCapError,
)
from .polytope import LatticePolytope, convex_hull, union_hull

INFINITY_NORMS = ("inf", "oo", math.inf)


def _require_dim(d: int, minimum: int = 2) -> None:
    if not isinstance(d, int) or d < minimum:
        raise DimensionMismatchError(f"dimension must be an integer >= {minimum}, got {d!r}")


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise DegenerateInputError(f"{name} must be a positive integer, got {value!r}")


def _guard_cells(cells: int) -> None:
    cap = caps.max_points()
    if cells > cap:
        raise ResourceCapError(
            f"point enumeration of {cells} cells exceeds cap {cap}"
        )


# -- metric balls -------------------------------------------------------------


def ball_polytope(d: int, m: int, rho) -> LatticePolytope:
    """Hull of the integer points with sum |z_i|^rho <= m^rho.

    rho is a positive integer or infinity (math.inf or the string "inf"),
    in which case the condition is max |z_i| <= m and the result is the cube.
    All comparisons are exact integer arithmetic.
    """
    _require_dim(d, 1)
    _require_positive("m", m)
    if rho in INFINITY_NORMS:
        power = None
    elif isinstance(rho, int) and rho >= 1:
        power = rho
    else:
        raise DegenerateInputError(f"rho must be a positive integer or infinity, got {rho!r}")
    _guard_cells((2 * m + 1) ** d)
    pts = []
    if power is None:
        pts = list(product(range(-m, m + 1), repeat=d))
    else:
        bound = m**power
        for z in product(range(-m, m + 1), repeat=d):
            if sum(abs(c) ** power for c in z) <= bound:
                pts.append(z)
    # The ball is convex, so its integer points are exactly the hull's.
    return convex_hull(pts, d, trusted_lattice=pts)


# -- paraboloid cap, base disk, cylinders -------------------------------------


def _transverse_range(d: int, r: int):
    """Iterate the first d-1 coordinates over the radius-r box."""
    return product(range(-r, r + 1), repeat=d - 1)


@lru_cache(maxsize=None)
def _cap_points(d: int, r: int) -> tuple:
    _guard_cells((2 * r + 1) ** (d - 1) * (r * r + 1))
    rr = r * r
    pts = []
    for head in _transverse_range(d, r):
        s = sum(c * c for c in head)
        if s <= rr:
            pts.extend(head + (h,) for h in range(0, rr - s + 1))
    return tuple(sorted(pts))


def paraboloid_cap_points(d: int, r: int) -> tuple:
    """Integer points z with z_d >= 0 and z_d + sum_{i<d} z_i^2 <= r^2."""
    _require_dim(d)
    _require_positive("r", r)
    return _cap_points(d, r)


@lru_cache(maxsize=None)
def paraboloid_hull(d: int, r: int) -> LatticePolytope:
    """Hull of the paraboloid cap points (a convex region: points trusted)."""
    pts = paraboloid_cap_points(d, r)
    return convex_hull(pts, d, trusted_lattice=pts)


@lru_cache(maxsize=None)
def base_disk_points(d: int, r: int) -> tuple:
    """Integer points of the radius-r disk in the hyperplane z_d = 0."""
    _require_dim(d)
    _require_positive("r", r)
    rr = r * r
    pts = [
        head + (0,)
        for head in _transverse_range(d, r)
        if sum(c * c for c in head) <= rr
    ]
    return tuple(sorted(pts))


def cylinder_points(d: int, r: int) -> tuple:
    """Integer points of the pinched solid cylinder: the round cylinder
    (sum_{i<d} z_i^2 <= r^2, 0 <= z_d <= r^2) intersected with the slab
    |z_1| <= 1 and the transverse paraboloid z_d + sum_{2<=i<d} z_i^2 <= r^2.
    """
    _require_dim(d)
    _require_positive("r", r)
    _guard_cells((2 * r + 1) ** (d - 1) * (r * r + 1))
    rr = r * r
    pts = []
    for head in _transverse_range(d, r):
        if abs(head[0]) > 1 or sum(c * c for c in head) > rr:
            continue
        tail = sum(c * c for c in head[1:])
        top = rr - tail
        if top >= 0:
            pts.extend(head + (h,) for h in range(0, top + 1))
    return tuple(sorted(pts))


@lru_cache(maxsize=None)
def pinched_region_points(d: int, r: int) -> tuple:
    """Integer points of the one-sided gluing region.

    Three parts: the open round cylinder (all cylinder inequalities strict)
    cut by the transverse paraboloid z_d + sum_{2<=i<d} z_i^2 <= r^2, the
    closed base disk at z_d = 0, and the full paraboloid cap.  Including the
    cap makes the half-region hulls nest: every core point is a region point.
    """
    _require_dim(d)
    _require_positive("r", r)
    _guard_cells((2 * r + 1) ** (d - 1) * (r * r + 1))
    rr = r * r
    pts = set(base_disk_points(d, r))
    pts.update(paraboloid_cap_points(d, r))
    for head in _transverse_range(d, r):
        if sum(c * c for c in head) >= rr:
            continue
        tail = sum(c * c for c in head[1:])
        for h in range(1, rr):
            if h + tail <= rr:
                pts.add(head + (h,))
    return tuple(sorted(pts))


def _half(points: Iterable) -> list:
    return [z for z in points if z[0] <= 0]


@lru_cache(maxsize=None)
def envelope_half_hull(d: int, r: int) -> LatticePolytope:
    """Hull of the pinched-region points with z_1 <= 0 (the peeling envelope).

    The region is not convex, so the hull may pick up extra interior points;
    the lattice set is enumerated, never trusted.
    """
    return convex_hull(_half(pinched_region_points(d, r)), d)


@lru_cache(maxsize=None)
def core_half_hull(d: int, r: int) -> LatticePolytope:
    """Hull of the paraboloid cap points with z_1 <= 0 (the protected core)."""
    pts = _half(paraboloid_cap_points(d, r))
    return convex_hull(pts, d, trusted_lattice=pts)


@lru_cache(maxsize=None)
def marked_vertices(d: int, r: int) -> tuple:
    """Cap-hull vertices with last coordinate nonzero and first coordinate
    >= 1: the vertices eligible for deletion when building family members."""
    hull = paraboloid_hull(d, r)
    return tuple(
        sorted(v for v in hull.vertices if v[d - 1] != 0 and v[0] >= 1)
    )


def peel_capacity(d: int, r: int) -> int:
    """How many points the envelope holds beyond the core."""
    return envelope_half_hull(d, r).n_points() - core_half_hull(d, r).n_points()


# -- peeling ------------------------------------------------------------------


def peel(hull: LatticePolytope, core: LatticePolytope, k: int) -> LatticePolytope:
    """Shrink `hull` to a polytope with exactly |core| + k lattice points,
    still containing `core`, by repeatedly deleting the lexicographically
    smallest vertex lying outside `core`.

    Deleting a vertex of the current hull removes exactly that one lattice
    point, so the count steps down by one per round.  Requires
    0 <= k <= |hull| - |core| and core contained in hull; raises
    ConstructionFailureError("Lemma4") when no deletable vertex remains.
    """
    if hull.dim != core.dim:
        raise DimensionMismatchError("hull and core dimensions differ")
    if any(not hull.contains(v) for v in core.vertices):
        raise DegenerateInputError("core is not contained in the hull")
    total = hull.n_points()
    base = core.n_points()
    if not 0 <= k <= total - base:
        raise ConstructionFailureError(
            "Lemma4",
            f"target {base + k} points outside the range [{base}, {total}]",
        )
    target = base + k
    pts = set(hull.lattice_points())
    current = hull
    while len(pts) > target:
        eligible = [v for v in current.vertices if not core.contains(v)]
        if not eligible:
            raise ConstructionFailureError(
                "Lemma4", "no vertex outside the core is left to delete"
            )
        pts.remove(min(eligible))
        current = convex_hull(pts, hull.dim, trusted_lattice=pts)
    return current


# -- radius and surplus selection ---------------------------------------------


def choose_radius(d: int, w: int) -> int:
    """The unique r with |cap hull(r)| <= w/2 < |cap hull(r+1)|.

    Requires odd w at least twice the smallest cap-hull count; failures carry
    the tag of the violated check (Eq30 for parity, Eq27 for the bracket).
    """
    _require_dim(d)
    _require_positive("w", w)
    if w % 2 == 0:
        raise ConstructionFailureError(
            "Eq30", f"target cardinality must be odd, got {w}"
        )
    if w < 2 * paraboloid_hull(d, 1).n_points():
        raise ConstructionFailureError(
            "Eq27",
            f"w={w} is below twice the smallest cap-hull count "
            f"{paraboloid_hull(d, 1).n_points()}",
        )
    r = 1
    while 2 * paraboloid_hull(d, r + 1).n_points() <= w:
        r += 1
    return r


def cardinality_slack(d: int, w: int, r: int) -> int:
    """The surplus u = w - 2|cap hull| + |base disk|: how many extra points
    the peeled half must carry.  Validates that u is even, nonnegative, and
    under five times r |base disk(r+1)| (tags Eq30/Eq31)."""
    _require_dim(d)
    _require_positive("w", w)
    _require_positive("r", r)
    u = w - 2 * paraboloid_hull(d, r).n_points() + len(base_disk_points(d, r))
    if u < 0 or u % 2 != 0:
        raise ConstructionFailureError(
            "Eq30", f"surplus u={u} must be an even nonnegative integer"
        )
    bound = 5 * r * len(base_disk_points(d, r + 1))
    if not u < bound:
        raise ConstructionFailureError(
            "Eq31", f"surplus u={u} must stay below 5*r*|disk(r+1)| = {bound}"
        )
    return u


def class_floor(d: int, n_members: int) -> int:
    """Lower bound for the number of equivalence classes among n_members
    pairwise-distinct family members: each class can absorb at most
    2^d (d-1)! of them."""
    denom = (2**d) * math.factorial(d - 1)
    return -(-n_members // denom)


# -- the symmetric construction pipeline --------------------------------------


@dataclass(frozen=True)
class DiagnosticCheck:
    tag: str
    ok: bool
    detail: str

    def to_json_obj(self) -> dict:
        return {"tag": self.tag, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class ConstructionPlan:
    """Everything shared by the members of one (d, w) family."""

    d: int
    w: int
    r: int
    u: int
    cap_hull: LatticePolytope
    core: LatticePolytope
    envelope: LatticePolytope
    marked: tuple
    capacity: int
    checks: tuple

    @property
    def family_size(self) -> int:
        return 2 ** len(self.marked)

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "w": self.w,
            "r": self.r,
            "u": self.u,
            "cap_hull_points": self.cap_hull.n_points(),
            "core_points": self.core.n_points(),
            "envelope_points": self.envelope.n_points(),
            "marked_vertices": [list(v) for v in self.marked],
            "peel_capacity": self.capacity,
            "family_size": self.family_size,
            "checks": [c.to_json_obj() for c in self.checks],
        }


def _fail(tag: str, detail: str):
    raise ConstructionFailureError(tag, detail)


@lru_cache(maxsize=None)
def plan_construction(d: int, w: int) -> ConstructionPlan:
    """Select the radius and surplus for target cardinality w and verify the
    shared feasibility inequalities.  Cached per (d, w)."""
    r = choose_radius(d, w)
    cap = paraboloid_hull(d, r)
    n_r = cap.n_points()
    n_next = paraboloid_hull(d, r + 1).n_points()
    checks = [
        DiagnosticCheck(
            "Eq27", True, f"2*{n_r} <= w={w} < 2*{n_next} fixes r={r}"
        )
    ]
    u = cardinality_slack(d, w, r)
    disk = len(base_disk_points(d, r))
    checks.append(
        DiagnosticCheck(
            "Eq30", True, f"u = {w} - 2*{n_r} + {disk} = {u}, even and >= 0"
        )
    )
    disk_next = len(base_disk_points(d, r + 1))
    checks.append(
        DiagnosticCheck("Eq31", True, f"u={u} < 5*{r}*{disk_next}")
    )
    marked = marked_vertices(d, r)
    if not 2 * len(marked) < disk:
        _fail(
            "Eq32",
            f"{len(marked)} marked vertices must number below half the "
            f"base disk count {disk}",
        )
    checks.append(
        DiagnosticCheck("Eq32", True, f"2*{len(marked)} < |disk| = {disk}")
    )
    envelope = envelope_half_hull(d, r)
    core = core_half_hull(d, r)
    if any(not envelope.contains(v) for v in core.vertices):
        _fail("Eq36", "core half-hull escapes the envelope half-hull")
    capacity = envelope.n_points() - core.n_points()
    asymptotic = 3 * r * disk_next
    if u // 2 > capacity:
        _fail(
            "Eq25",
            f"peel needs u/2 = {u // 2} points of capacity {capacity} "
            f"(asymptotic guarantee 3*r*|disk(r+1)| = {asymptotic} "
            f"{'holds' if capacity >= asymptotic else 'does not hold'} here)",
        )
    checks.append(
        DiagnosticCheck(
            "Eq25",
            True,
            f"capacity {capacity} covers u/2 = {u // 2} "
            f"(asymptotic floor {asymptotic})",
        )
    )
    return ConstructionPlan(
        d, w, r, u, cap, core, envelope, marked, capacity, tuple(checks)
    )


@lru_cache(maxsize=None)
def _peeled(d: int, w: int, k: int) -> LatticePolytope:
    plan = plan_construction(d, w)
    return peel(plan.envelope, plan.core, k)


@dataclass(frozen=True)
class ConstructedMember:
    """One family member plus its full audit trail."""

    plan: ConstructionPlan
    marks: tuple
    pruned_cap: LatticePolytope
    peeled: LatticePolytope
    half: LatticePolytope
    polytope: LatticePolytope
    checks: tuple

    def to_json_obj(self) -> dict:
        return {
            "plan": self.plan.to_json_obj(),
            "marks": [list(v) for v in self.marks],
            "pruned_cap_points": self.pruned_cap.n_points(),
            "peeled_points": self.peeled.n_points(),
            "half_points": self.half.n_points(),
            "polytope": self.polytope.to_json_obj(),
            "cardinality": self.polytope.n_points(),
            "checks": [c.to_json_obj() for c in self.checks],
        }


def build_symmetric_polytope(d: int, w: int, marks: Sequence = ()) -> ConstructedMember:
    """Build the family member for one subset of the marked vertices.

    Deletes `marks` from the cap hull, peels the envelope down to
    |core| + u/2 + |marks| points, glues the two halves, and symmetrizes
    through the origin.  Every cardinality and convexity claim is re-verified
    on enumerated point sets; any failure raises ConstructionFailureError
    naming the violated check.
    """
    plan = plan_construction(d, w)
    marks = tuple(sorted(tuple(v) for v in marks))
    if len(set(marks)) != len(marks) or any(v not in plan.marked for v in marks):
        raise DegenerateInputError(
            "marks must be a subset of the plan's marked vertices"
        )
    j = len(marks)
    k = plan.u // 2 + j
    checks = list(plan.checks)
    if k > plan.capacity:
        _fail(
            "Eq25",
            f"deleting {j} marked vertices needs peel depth {k} beyond "
            f"capacity {plan.capacity}",
        )

    # Step 1: delete the chosen marked vertices from the cap hull.
    cap_pts = set(plan.cap_hull.lattice_points())
    pruned_pts = cap_pts.difference(marks)
    pruned = convex_hull(pruned_pts, d, trusted_lattice=pruned_pts)
    if pruned.n_points() != plan.cap_hull.n_points() - j:
        _fail("Eq35", "vertex deletion did not remove exactly one point each")
    checks.append(
        DiagnosticCheck("Eq35", True, f"cap hull pruned by {j} vertices")
    )

    # Lemma 4 peel: the one-sided envelope shrunk to |core| + u/2 + j points.
    peeled = _peeled(d, w, k)
    core_pts = set(plan.core.lattice_points())
    peeled_pts = set(peeled.lattice_points())
    env_pts = set(plan.envelope.lattice_points())
    if not (core_pts <= peeled_pts <= env_pts):
        _fail("Eq36", "peeled polytope escapes the core/envelope sandwich")
    checks.append(
        DiagnosticCheck(
            "Eq36", True, "core <= peeled <= envelope on point sets"
        )
    )
    if len(peeled_pts) != len(core_pts) + k:
        _fail("Eq37", f"peeled count {len(peeled_pts)} != core + {k}")
    checks.append(
        DiagnosticCheck("Eq37", True, f"peeled holds core + {k} points")
    )

    # Step 2: glue the peeled half to the pruned cap.
    half = union_hull(peeled, pruned)
    expected_half = peeled_pts | pruned_pts
    half_pts = set(half.lattice_points())
    if half_pts != expected_half:
        extra = len(half_pts - expected_half)
        _fail("Eq38", f"gluing is not convex: hull adds {extra} points")
    nested = all(((0,) + z[1:]) in expected_half for z in expected_half)
    if not nested:
        _fail(
            "Eq38",
            "slice nesting fails: some point does not project into the z1=0 slice",
        )
    checks.append(
        DiagnosticCheck(
            "Eq38",
            True,
            "union of halves is already convex; every point projects into "
            "the z1=0 slice",
        )
    )
    if len(half_pts) != plan.cap_hull.n_points() + plan.u // 2:
        _fail(
            "Eq39",
            f"half count {len(half_pts)} != cap {plan.cap_hull.n_points()} + u/2",
        )
    checks.append(
        DiagnosticCheck(
            "Eq39", True, f"half holds cap + u/2 = {len(half_pts)} points"
        )
    )

    # Step 3: symmetrize through the origin.
    mirrored = half.negate()
    final = union_hull(half, mirrored)
    expected_final = half_pts | set(mirrored.lattice_points())
    final_pts = set(final.lattice_points())
    if final_pts != expected_final:
        _fail("Eq40", "symmetrization is not convex")
    if len(final_pts) != w:
        _fail("Eq40", f"final cardinality {len(final_pts)} != w = {w}")
    if final.symmetry_center() != (0,) * d:
        _fail("Eq40", "final polytope is not symmetric about the origin")
    checks.append(
        DiagnosticCheck(
            "Eq40", True, f"|final| = {w}, centrally symmetric about 0"
        )
    )

    ell, dirs = final.lattice_diameter()
    e_d = (0,) * (d - 1) + (1,)
    if ell != 2 * plan.r**2 + 1 or dirs != (e_d,):
        _fail(
            "DiamMax",
            f"lattice diameter {(ell, dirs)} != ({2 * plan.r ** 2 + 1}, (e_d,))",
        )
    checks.append(
        DiagnosticCheck(
            "DiamMax",
            True,
            f"diameter {ell} attained only along the last coordinate axis",
        )
    )
    return ConstructedMember(plan, marks, pruned, peeled, half, final, tuple(checks))


def _subsets_in_order(items: Sequence, limit: Optional[int]):
    """Subsets ordered by size then lexicographically, up to `limit`."""
    out = []
    for size in range(len(items) + 1):
        for combo in combinations(items, size):
            out.append(combo)
            if limit is not None and len(out) >= limit:
                return out
    return out


FAMILY_ENUMERATION_CAP = 4096


def symmetric_family(d: int, w: int, limit: Optional[int] = None) -> list:
    """Build family members for subsets of the marked vertices, smallest
    subsets first.  With limit=None the whole family is built (guarded by
    FAMILY_ENUMERATION_CAP)."""
    plan = plan_construction(d, w)
    if limit is None and plan.family_size > FAMILY_ENUMERATION_CAP:
        raise ResourceCapError(
            f"family of size {plan.family_size} exceeds the enumeration cap "
            f"{FAMILY_ENUMERATION_CAP}; pass a limit"
        )
    subsets = _subsets_in_order(plan.marked, limit)
    return [build_symmetric_polytope(d, w, marks) for marks in subsets]


def max_subset_size(n_items: int, limit: Optional[int]) -> int:
    """Largest subset size appearing among the first `limit` subsets in
    size-then-lex order (all of them when limit is None)."""
    if limit is None:
        return n_items
    seen = 0
    for size in range(n_items + 1):
        seen += math.comb(n_items, size)
        if seen >= limit:
            return size
    return n_items


def feasible_widths(
    d: int,
    count: int = 1,
    limit: Optional[int] = None,
    start: Optional[int] = None,
    max_width: int = 100_000,
) -> list:
    """The first `count` odd target cardinalities whose whole requested
    family (all subsets, or the first `limit`) fits the peel capacity."""
    _require_dim(d)
    lo = 2 * paraboloid_hull(d, 1).n_points() + 1
    w = max(lo, start if start is not None else lo)
    if w % 2 == 0:
        w += 1
    found = []
    while len(found) < count and w <= max_width:
        try:
            plan = plan_construction(d, w)
            j_max = max_subset_size(len(plan.marked), limit)
            if plan.u // 2 + j_max <= plan.capacity:
                found.append(w)
        except ConstructionFailureError:
            pass
        w += 2
    if len(found) < count:
        raise ResourceCapError(
            f"only {len(found)} feasible widths at or below {max_width}",
            partial=found,
        )
    return found


# -- slice maximality audit ----------------------------------------------------


def slice_maximality_audit(
    member: ConstructedMember, samples: int = 100, seed: int = 0
) -> DiagnosticCheck:
    """Check that among hyperplanes through the origin whose normal has a
    nonzero last coordinate, the coordinate hyperplane z_d = 0 holds the
    most lattice points of the member (the base-disk count), strictly more
    than `samples` sampled other primitive normals."""
    import random

    from . import linalg

    p = member.polytope
    d, r = member.plan.d, member.plan.r
    e_d = (0,) * (d - 1) + (1,)
    base_count = p.hyperplane_slice_count(e_d, 0)
    expected = len(base_disk_points(d, r))
    if base_count != expected:
        return DiagnosticCheck(
            "SliceMax", False, f"base slice holds {base_count} != {expected}"
        )
    rng = random.Random(seed)
    bound = max(4, r)
    tried = 0
    while tried < samples:
        n = tuple(rng.randint(-bound, bound) for _ in range(d))
        if n[d - 1] == 0 or not any(n[:-1]):
            continue
        g = linalg.gcd_vector(n)
        n = tuple(c // g for c in n)
        tried += 1
        count = p.hyperplane_slice_count(n, 0)
        if count >= base_count:
            return DiagnosticCheck(
                "SliceMax",
                False,
                f"normal {n} slice holds {count} >= base {base_count}",
            )
    return DiagnosticCheck(
        "SliceMax",
        True,
        f"base slice {base_count} beats {samples} sampled normals",
    )


# -- continuous volume model ---------------------------------------------------


def _gamma_half(n: int) -> tuple:
    """Gamma(n/2) for positive integer n, as (rational, half-power of pi)."""
    if n <= 0:
        raise DegenerateInputError("gamma argument must be positive")
    if n % 2 == 0:
        return Fraction(math.factorial(n // 2 - 1)), 0
    double_fact = 1
    for t in range(n - 2, 0, -2):
        double_fact *= t
    return Fraction(double_fact, 2 ** ((n - 1) // 2)), 1


def _wallis(s: int) -> tuple:
    """Integral of sin^s over [0, pi/2] as (rational, half-power of pi)."""
    num, hn = _gamma_half(s + 1)
    den, hd = _gamma_half(s + 2)
    return Fraction(1, 2) * num / den, 1 + hn - hd


def _to_float(coeff: Fraction, half_pow: int) -> float:
    return float(coeff) * math.pi ** (half_pow / 2)


@dataclass(frozen=True)
class ContinuousModel:
    """Closed-form continuous counterparts of the discrete counts at radius r.

    c1 scales the paraboloid-cap volume (v = c1 r^{d+1}) and c2 the pinched
    cylinder volume (v = c2 r^{d+1}); both are stored exactly as a rational
    coefficient times a half-integer power of pi, plus float conveniences.
    c1 < c2 is what leaves room for the peeling surplus.
    """

    d: int
    r: int
    c1_coeff: Fraction
    c1_pi_half_pow: int
    c2_coeff: Fraction
    c2_pi_half_pow: int
    cap_volume: float
    cap_surface: float
    cylinder_volume: float
    cylinder_surface_bound: float

    @property
    def c1(self) -> float:
        return _to_float(self.c1_coeff, self.c1_pi_half_pow)

    @property
    def c2(self) -> float:
        return _to_float(self.c2_coeff, self.c2_pi_half_pow)

    def c1_lt_c2(self) -> bool:
        """Exact comparison when both constants share a power of pi."""
        if self.c1_pi_half_pow == self.c2_pi_half_pow:
            return self.c1_coeff < self.c2_coeff
        return self.c1 < self.c2

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "c1": {
                "coeff": str(self.c1_coeff),
                "pi_half_power": self.c1_pi_half_pow,
                "float": self.c1,
            },
            "c2": {
                "coeff": str(self.c2_coeff),
                "pi_half_power": self.c2_pi_half_pow,
                "float": self.c2,
            },
            "c1_lt_c2": self.c1_lt_c2(),
            "cap_volume": self.cap_volume,
            "cap_surface": self.cap_surface,
            "cylinder_volume": self.cylinder_volume,
            "cylinder_surface_bound": self.cylinder_surface_bound,
        }


def _c1_exact(d: int) -> tuple:
    gc, gh = _gamma_half(d + 1)
    return Fraction(2, d + 1) / gc, (d - 1) - gh


def _c2_exact(d: int) -> tuple:
    if d == 2:
        # The general prefactor carries a d-2 that vanishes in the plane; the
        # planar pinched cylinder is the 2r x r^2 rectangle, volume 2 r^3.
        return Fraction(2), 0
    gc, gh = _gamma_half(d)
    pref_coeff = Fraction(2 * (d - 2)) / gc
    pref_pow = (d - 2) - gh
    terms = [_wallis(d - 3), _wallis(d - 1), _wallis(d + 1)]
    if not (terms[0][1] == terms[1][1] == terms[2][1]):
        raise DegenerateInputError("mismatched pi powers in the cylinder integral")
    combo = terms[0][0] - 2 * terms[1][0] + terms[2][0]
    return pref_coeff * combo, pref_pow + terms[0][1]


def _unit_ball_volume(k: int) -> float:
    if k == 0:
        return 1.0
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def continuous_model(d: int, r: int) -> ContinuousModel:
    """Evaluate the continuous volume constants at (d, r)."""
    _require_dim(d)
    _require_positive("r", r)
    c1_coeff, c1_pow = _c1_exact(d)
    c2_coeff, c2_pow = _c2_exact(d)
    # Cap surface without the base: the derivative-shell integral evaluates
    # to (2(d-1)/d) pi^{(d-1)/2} / Gamma((d+1)/2) * r^d.
    gc, gh = _gamma_half(d + 1)
    s_coeff = Fraction(2 * (d - 1), d) / gc
    s_pow = (d - 1) - gh
    cap_surface = _to_float(s_coeff, s_pow) * r**d
    # Coarse but valid envelope for the pinched cylinder surface: both glued
    # cylinders fit in boxes whose total face area is below this.
    cyl_surface = (d * _unit_ball_volume(d - 1) + d * 2**d) * r**d
    return ContinuousModel(
        d,
        r,
        c1_coeff,
        c1_pow,
        c2_coeff,
        c2_pow,
        _to_float(c1_coeff, c1_pow) * r ** (d + 1),
        cap_surface,
        _to_float(c2_coeff, c2_pow) * r ** (d + 1),
        cyl_surface,
    )
