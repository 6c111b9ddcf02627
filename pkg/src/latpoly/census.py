"""Census of plane lattice polygons by exact statistic, up to equivalence.

Counts equivalence classes of convex lattice polygons with a prescribed
normalized volume or lattice-point count, optionally restricted to centrally
symmetric polygons (with a lattice center) or to polygons with interior
points.

Enumeration walks edge-vector cycles: a convex polygon anchored at its
(y, x)-minimal vertex is exactly a sequence of integer edge vectors with
strictly increasing angles, first angle in [0, pi), summing to zero.  Partial
shoelace area and boundary gcd sums grow monotonically along the walk, so the
target statistic prunes the search hard.  Each polygon is produced once up to
translation.

Two independent pipelines answer every query:

  A. a complete edge-cycle invariant (column-Hermite normalization of the
     cycle, minimized over rotations and the reversed traversal), and
  B. the generic frame-search equivalence test on reconstructed polytopes.

`census_crosscheck` runs both and raises CensusMismatchError on any
disagreement.  Boxes adapt: a query re-runs with the extent bound enlarged by
2 until the class count is unchanged twice in a row.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from . import caps, equivalence, linalg
from .errors import CensusMismatchError, DegenerateInputError, ResourceCapError
from .polytope import LatticePolytope, convex_hull

STATISTICS = ("normalized_volume", "cardinality")
CONSTRAINTS = ("none", "centrally_symmetric", "nonempty_interior")

DEFAULT_START_BOX = 4
BOX_HARD_CAP = 60


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _half(e) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2*pi)."""
    return 0 if (e[1] > 0 or (e[1] == 0 and e[0] > 0)) else 1


def _angle_lt(a, b) -> bool:
    """Strict angle comparison of nonzero integer vectors."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha < hb
    return _cross(a, b) > 0


def _same_direction(a, b) -> bool:
    return _cross(a, b) == 0 and a[0] * b[0] + a[1] * b[1] > 0


@lru_cache(maxsize=None)
def _edge_pool(box: int) -> tuple:
    """All nonzero integer vectors with both coordinates in [-box, box],
    sorted by angle (ties, i.e. parallel same-direction vectors, by length)."""
    import functools

    vecs = [
        (x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if (x, y) != (0, 0)
    ]

    def cmp(a, b):
        if _angle_lt(a, b):
            return -1
        if _angle_lt(b, a):
            return 1
        la, lb = abs(a[0]) + abs(a[1]), abs(b[0]) + abs(b[1])
        return -1 if la < lb else (1 if la > lb else 0)

    return tuple(sorted(vecs, key=functools.cmp_to_key(cmp)))


def _statistic_ok(two_a, b_total, statistic, value) -> bool:
    if two_a <= 0:
        return False
    if statistic == "normalized_volume":
        return two_a == value
    return (two_a + b_total) % 2 == 0 and (two_a + b_total) // 2 + 1 == value


def _cycle_satisfies(edges, two_a, b_total, constraint) -> bool:
    """Constraint test on a closed cycle; used as a filter so all constraint
    flavors of one query share a single enumeration."""
    if constraint == "centrally_symmetric":
        k = len(edges)
        if k % 2 != 0:
            return False
        for i in range(k // 2):
            opp = edges[i + k // 2]
            if opp[0] != -edges[i][0] or opp[1] != -edges[i][1]:
                return False
        # the vertex opposite the anchor is twice the center
        mx = sum(e[0] for e in edges[: k // 2])
        my = sum(e[1] for e in edges[: k // 2])
        return mx % 2 == 0 and my % 2 == 0
    if constraint == "nonempty_interior":
        # Interior count is (two_a - b_total + 2) / 2, positive iff 2A >= B.
        return two_a >= b_total
    return True


@lru_cache(maxsize=None)
def _pool_meta(box: int) -> tuple:
    """Edge pool plus per-index coordinates, gcds, and primitive-direction ids."""
    pool = _edge_pool(box)
    xs = tuple(e[0] for e in pool)
    ys = tuple(e[1] for e in pool)
    gs = tuple(gcd(e[0], e[1]) for e in pool)
    prim: dict = {}
    ds = []
    for e, g in zip(pool, gs):
        p = (e[0] // g, e[1] // g)
        ds.append(prim.setdefault(p, len(prim)))
    return pool, xs, ys, gs, tuple(ds)


def _search_from(box, first_idx, statistic, value) -> list:
    """All statistic-matching edge cycles whose first edge is pool[first_idx],
    as (edges, 2*area, boundary point count) triples."""
    pool, xs, ys, gs, ds = _pool_meta(box)
    out = []
    n = len(pool)
    is_nvol = statistic == "normalized_volume"

    def rec(prev_idx, vx, vy, edges, two_a, b, minx, maxx, miny, maxy):
        if len(edges) >= 2 and (vx or vy):
            last = edges[-1]
            lx, ly = last
            # closing edge (-vx, -vy) must sit at a strictly larger angle
            hl = 0 if (ly > 0 or (ly == 0 and lx > 0)) else 1
            hc = 0 if (vy < 0 or (vy == 0 and vx < 0)) else 1
            if hl < hc or (hl == hc and ly * vx - lx * vy > 0):
                b_total = b + gcd(vx, vy)
                if _statistic_ok(two_a, b_total, statistic, value):
                    out.append((tuple(edges) + ((-vx, -vy),), two_a, b_total))
        prev_d = ds[prev_idx]
        for idx in range(prev_idx + 1, n):
            if ds[idx] == prev_d:
                continue
            ex, ey = xs[idx], ys[idx]
            nx, ny = vx + ex, vy + ey
            n_two_a = two_a + vx * ey - vy * ex
            n_b = b + gs[idx]
            if is_nvol:
                if n_two_a > value or n_b + 1 > value + 2:
                    continue
            elif n_two_a + n_b + 1 > 2 * (value - 1):
                continue
            nminx = nx if nx < minx else minx
            nmaxx = nx if nx > maxx else maxx
            if nmaxx - nminx > box:
                continue
            nminy = ny if ny < miny else miny
            nmaxy = ny if ny > maxy else maxy
            if nmaxy - nminy > box:
                continue
            if (ey < 0 or (ey == 0 and ex < 0)) and (nx or ny):
                # Descending phase: every later edge has a strictly larger
                # angle, so the remaining edges span a cone of width < pi and
                # their sum (the return displacement) must lie strictly past
                # this edge's angle; otherwise the walk can never close.
                if not (ny > 0 or (ny == 0 and nx > 0)):
                    continue
                if ey * nx - ex * ny <= 0:
                    continue
            edges.append(pool[idx])
            rec(idx, nx, ny, edges, n_two_a, n_b, nminx, nmaxx, nminy, nmaxy)
            edges.pop()

    first = pool[first_idx]
    rec(
        first_idx,
        first[0],
        first[1],
        [first],
        0,
        gs[first_idx],
        min(0, first[0]),
        max(0, first[0]),
        min(0, first[1]),
        max(0, first[1]),
    )
    return out


def _search_args_valid(statistic, value, constraint, box):
    if statistic not in STATISTICS:
        raise DegenerateInputError(f"unknown statistic {statistic!r}")
    if constraint not in CONSTRAINTS:
        raise DegenerateInputError(f"unknown constraint {constraint!r}")
    if not isinstance(value, int) or value < 1:
        raise DegenerateInputError(f"statistic value must be a positive integer, got {value!r}")
    if not isinstance(box, int) or box < 1:
        raise DegenerateInputError(f"box must be a positive integer, got {box!r}")


def _raw_cycles(statistic, value, box, workers: int = 1) -> list:
    """Every statistic-matching polygon (one edge cycle each, up to
    translation), as (edges, 2*area, boundary count) triples."""
    pool = _edge_pool(box)
    first_indices = [
        i
        for i, e in enumerate(pool)
        if _half(e) == 0
        and (statistic == "cardinality" or gcd(e[0], e[1]) <= value + 2)
    ]
    results = []
    if workers <= 1:
        for i in first_indices:
            results.extend(_search_from(box, i, statistic, value))
    else:
        with ProcessPoolExecutor(max_workers=workers) as px:
            chunks = px.map(
                _branch_worker,
                [(box, i, statistic, value) for i in first_indices],
            )
            for chunk in chunks:
                results.extend(chunk)
    cap = caps.max_points()
    if len(results) > cap:
        raise ResourceCapError(
            f"census enumeration produced {len(results)} polygons, over cap {cap}"
        )
    return results


def _branch_worker(args):
    box, i, statistic, value = args
    return _search_from(box, i, statistic, value)


@lru_cache(maxsize=None)
def _keyed_cycles(statistic, value, box, workers: int = 1) -> tuple:
    """(cycle key, edges, 2*area, boundary count) per raw polygon; one shared
    cache feeds every constraint flavor of the query."""
    return tuple(
        (cycle_key(edges), edges, two_a, b_total)
        for edges, two_a, b_total in _raw_cycles(statistic, value, box, workers)
    )


# -- complete edge-cycle invariant (pipeline A) --------------------------------


def cycle_key(edges: Sequence) -> tuple:
    """Complete equivalence invariant of a ccw edge cycle.

    Minimizes the column-Hermite-normalized edge sequence over all rotations
    of the cycle and of its reversal.  Two polygons get the same key iff an
    affine unimodular map carries one onto the other: the normalizing matrix
    for the first two edges is the same for any unimodular image, and
    orientation-reversing maps correspond to the reversed traversal.
    """
    k = len(edges)
    best = None
    for base in (tuple(edges), tuple(reversed(edges))):
        for s in range(k):
            seq = base[s:] + base[:s]
            u = linalg.column_hermite_transform((seq[0], seq[1]))
            img = tuple(linalg.row_times_matrix(e, u) for e in seq)
            if best is None or img < best:
                best = img
    return best


def vertices_from_edges(edges: Sequence) -> tuple:
    """Vertex cycle of the polygon, anchored so the walk starts at the
    origin and shifted into the nonnegative quadrant."""
    vs = [(0, 0)]
    for e in edges[:-1]:
        vs.append((vs[-1][0] + e[0], vs[-1][1] + e[1]))
    minx = min(v[0] for v in vs)
    miny = min(v[1] for v in vs)
    return tuple((x - minx, y - miny) for x, y in vs)


def polygon_from_edges(edges: Sequence) -> LatticePolytope:
    return convex_hull(vertices_from_edges(edges), 2)


@lru_cache(maxsize=None)
def _census_at_box(statistic, value, constraint, box, workers=1) -> tuple:
    """Sorted (key, representative edge cycle) pairs at a fixed box."""
    _search_args_valid(statistic, value, constraint, box)
    reps: dict = {}
    for key, edges, two_a, b_total in _keyed_cycles(statistic, value, box, workers):
        if not _cycle_satisfies(edges, two_a, b_total, constraint):
            continue
        if key not in reps or edges < reps[key]:
            reps[key] = edges
    return tuple(sorted(reps.items()))


# -- query records --------------------------------------------------------------


@dataclass(frozen=True)
class CensusQuery:
    statistic: str
    value: int
    constraint: str = "none"
    box: Optional[int] = None
    dimension: int = 2

    def validate(self) -> None:
        if self.dimension != 2:
            raise DegenerateInputError(
                "census enumeration is exhaustive ground truth for dimension 2 only"
            )
        _search_args_valid(
            self.statistic, self.value, self.constraint, self.box or DEFAULT_START_BOX
        )


@dataclass(frozen=True)
class CensusRecord:
    statistic: str
    value: int
    constraint: str
    box: int
    stable: bool
    class_count: int
    representatives: tuple
    canonical_forms: tuple

    def to_json_obj(self) -> dict:
        return {
            "statistic": self.statistic,
            "value": self.value,
            "constraint": self.constraint,
            "box": self.box,
            "stable": self.stable,
            "class_count": self.class_count,
            "representatives": [
                [list(v) for v in rep] for rep in self.representatives
            ],
            "canonical_forms": list(self.canonical_forms),
        }


def _verify_representative(statistic, value, constraint, edges) -> None:
    """Re-derive the statistic of one representative through the polytope
    machinery (bounding-box enumeration, simplex-fan volume) as a cheap
    independent check on the edge-walk bookkeeping."""
    p = polygon_from_edges(edges)
    got = p.normalized_volume() if statistic == "normalized_volume" else p.n_points()
    if got != value:
        raise CensusMismatchError(
            f"representative statistic mismatch: polytope pipeline found {got}, "
            f"edge walk claimed {value}",
            diff={"edges": edges},
        )
    if constraint == "centrally_symmetric" and p.symmetry_center() is None:
        raise CensusMismatchError(
            "representative is not centrally symmetric about a lattice point",
            diff={"edges": edges},
        )
    if constraint == "nonempty_interior" and not p.interior_lattice_points():
        raise CensusMismatchError(
            "representative has no interior point", diff={"edges": edges}
        )


def enumerate_classes(query: CensusQuery, workers: int = 1) -> CensusRecord:
    """Count equivalence classes for the query, growing the box until the
    count is unchanged twice in a row.  Raises ResourceCapError (with the
    best partial record attached) if the hard box cap is hit first."""
    query.validate()
    box = query.box or DEFAULT_START_BOX
    counts: list = []
    while True:
        pairs = _census_at_box(
            query.statistic, query.value, query.constraint, box, workers
        )
        counts.append(len(pairs))
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            break
        if box + 2 > BOX_HARD_CAP:
            partial = CensusRecord(
                query.statistic,
                query.value,
                query.constraint,
                box,
                False,
                len(pairs),
                tuple(vertices_from_edges(e) for _, e in pairs),
                (),
            )
            raise ResourceCapError(
                f"census box cap {BOX_HARD_CAP} reached without stabilizing",
                partial=partial,
            )
        box += 2
    reps = []
    forms = []
    for _, edges in pairs:
        _verify_representative(query.statistic, query.value, query.constraint, edges)
        reps.append(vertices_from_edges(edges))
        forms.append(equivalence.canonical_form(polygon_from_edges(edges)))
    return CensusRecord(
        query.statistic,
        query.value,
        query.constraint,
        box,
        True,
        len(pairs),
        tuple(reps),
        tuple(sorted(forms)),
    )


CROSSCHECK_FULL_LIMIT = 3000


def census_crosscheck(query: CensusQuery, workers: int = 1) -> bool:
    """Check the two pipelines against each other and raise
    CensusMismatchError on the first discrepancy.

    Small raw sets (at most CROSSCHECK_FULL_LIMIT polygons) are partitioned
    in full by the generic frame-search equivalence test, demanding the same
    class count and exactly one edge-cycle invariant per frame-search class.
    Larger sets are verified per class on samples: three members of each
    edge-cycle class must share one frame-search canonical form, and the
    canonical forms must be pairwise distinct across classes."""
    record = enumerate_classes(query, workers)
    keyed = [
        kc
        for kc in _keyed_cycles(query.statistic, query.value, record.box, workers)
        if _cycle_satisfies(kc[1], kc[2], kc[3], query.constraint)
    ]
    by_key: dict = {}
    for key, edges, _ta, _b in keyed:
        by_key.setdefault(key, []).append(edges)
    if len(by_key) != record.class_count:
        raise CensusMismatchError(
            f"class recount changed: {len(by_key)} vs {record.class_count}",
            diff={"keys": len(by_key)},
        )
    if len(keyed) <= CROSSCHECK_FULL_LIMIT:
        polys = [polygon_from_edges(e) for _, e, _ta, _b in keyed]
        partition = equivalence.partition_classes(polys)
        if len(partition) != record.class_count:
            raise CensusMismatchError(
                f"pipelines disagree: frame search finds {len(partition)} classes, "
                f"edge-cycle invariant finds {record.class_count}",
                diff={"partition_sizes": sorted(len(c) for c in partition)},
            )
        seen: dict = {}
        for cls in partition:
            cls_keys = {keyed[i][0] for i in cls}
            if len(cls_keys) != 1:
                raise CensusMismatchError(
                    "one frame-search class carries several edge-cycle invariants",
                    diff={"indices": cls},
                )
            key = cls_keys.pop()
            if key in seen:
                raise CensusMismatchError(
                    "two frame-search classes share one edge-cycle invariant",
                    diff={"indices": cls + seen[key]},
                )
            seen[key] = cls
        return True
    forms: dict = {}
    for key, members in sorted(by_key.items()):
        sample = sorted({members[0], min(members), members[-1]})
        class_forms = {
            equivalence.canonical_form(polygon_from_edges(e)) for e in sample
        }
        if len(class_forms) != 1:
            raise CensusMismatchError(
                "one edge-cycle class holds frame-search-inequivalent polygons",
                diff={"members": sample},
            )
        form = class_forms.pop()
        if form in forms:
            raise CensusMismatchError(
                "two edge-cycle classes share one frame-search canonical form",
                diff={"keys": [key, forms[form]]},
            )
        forms[form] = key
    return True


# -- growth tables ---------------------------------------------------------------


def growth_table(
    statistic: str,
    values: Sequence,
    constraint: str = "none",
    box: Optional[int] = None,
    workers: int = 1,
) -> list:
    """CensusRecords for each value in order (each stabilized separately)."""
    return [
        enumerate_classes(CensusQuery(statistic, v, constraint, box), workers)
        for v in values
    ]


CSV_COLUMNS = (
    "statistic",
    "value",
    "constraint",
    "box",
    "stable",
    "class_count",
    "log_count",
    "cube_root",
    "ratio",
)


def records_to_csv(records: Sequence) -> str:
    """Deterministic CSV with growth diagnostics: log of the class count,
    the cube root of the statistic value, and their ratio (the growth rate
    scale for plane polygon counts)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        cube = rec.value ** (1 / 3)
        if rec.class_count > 0:
            log_count = math.log(rec.class_count)
            log_str = f"{log_count:.6f}"
            ratio = f"{log_count / cube:.6f}"
        else:
            log_str = ""
            ratio = ""
        writer.writerow(
            [
                rec.statistic,
                rec.value,
                rec.constraint,
                rec.box,
                str(rec.stable).lower(),
                rec.class_count,
                log_str,
                f"{cube:.6f}",
                ratio,
            ]
        )
    return buf.getvalue()
