"""Convex lattice polytopes with exact integer arithmetic.

A LatticePolytope is the convex hull of finitely many points of Z^d and must
be full-dimensional in its ambient space.  Vertices are stored as a
lexicographically sorted tuple, so equality of polytopes is equality of that
tuple.  All predicates (hull orientation, facet membership, volumes) are
integer-exact; nothing here touches floating point.

Hull construction is a beneath-beyond incremental algorithm over simplicial
facets; coplanar simplices are merged into true facets afterwards, and the
simplicial list is kept as a boundary triangulation for volume sums.
Instances are immutable after construction and cache lattice point sets
lazily, which keeps them safe to share across worker processes.
"""

from __future__ import annotations

import json
import math
from itertools import product
from typing import Iterable, NamedTuple, Optional, Sequence

from . import linalg
from .caps import max_points
from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    NonPrimitiveDirectionError,
    NotCentrallySymmetricError,
    ResourceCapError,
)

Point = linalg.Point


class Facet(NamedTuple):
    """Inequality normal . x <= offset, tight exactly on one facet."""

    normal: Point
    offset: int


def _as_point(p, dim) -> Point:
    t = tuple(int(x) for x in p)
    if len(t) != dim:
        raise DimensionMismatchError(f"point {t} does not have dimension {dim}")
    return t


def _affine_basis(points: Sequence[Point]):
    """Indices [i0, i1, ...] of points whose differences from points[i0] are
    linearly independent, grown greedily in list order."""
    base = points[0]
    chosen: list[int] = [0]
    rows: list[Point] = []
    for idx in range(1, len(points)):
        cand = linalg.vec_sub(points[idx], base)
        if linalg.matrix_rank(rows + [cand]) > len(rows):
            rows.append(cand)
            chosen.append(idx)
    return chosen, rows


def _cross_2d(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d_cycle(points: Sequence[Point]) -> list[Point]:
    """Counterclockwise vertex cycle of a planar hull, collinear points dropped."""
    pts = sorted(set(points))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross_2d(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross_2d(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facet_normal_through(points: Sequence[Point]) -> Point:
    """Integer normal of the hyperplane through d affinely independent points."""
    base = points[0]
    rows = [linalg.vec_sub(p, base) for p in points[1:]]
    d = len(base)
    normal = []
    for j in range(d):
        minor = tuple(tuple(row[k] for k in range(d) if k != j) for row in rows)
        normal.append((-1) ** j * linalg.det(minor))
    return tuple(normal)


def _reduce_facet(normal: Point, offset: int) -> tuple[Point, int]:
    g = math.gcd(*normal)
    return tuple(x // g for x in normal), offset // g


class _IncrementalHull:
    """Beneath-beyond hull over simplicial facets, exact integer predicates."""

    def __init__(self, points: Sequence[Point], dim: int):
        self.dim = dim
        self.points = points
        basis_idx, _ = _affine_basis(points)
        simplex = [points[i] for i in basis_idx]
        # reference strictly inside the starting simplex: its vertex sum,
        # compared against (d+1) * offset to stay integral
        self.ref_sum = tuple(sum(c) for c in zip(*simplex))
        self.ref_den = dim + 1
        self.facets: list[tuple[Point, int, tuple[Point, ...]]] = []
        for skip in range(dim + 1):
            face = tuple(p for i, p in enumerate(simplex) if i != skip)
            self._add_facet(face)
        used = set(basis_idx)
        order = sorted(range(len(points)), key=lambda i: points[i])
        for i in order:
            if i not in used:
                self._insert(points[i])

    def _oriented(self, face: tuple[Point, ...]) -> tuple[Point, int]:
        normal = _facet_normal_through(face)
        offset = linalg.dot(normal, face[0])
        side = linalg.dot(normal, self.ref_sum) - self.ref_den * offset
        if side == 0:
            raise DegenerateInputError("interior reference landed on a facet plane")
        if side > 0:
            normal = linalg.vec_neg(normal)
            offset = -offset
        return normal, offset

    def _add_facet(self, face: tuple[Point, ...]):
        normal, offset = self._oriented(face)
        self.facets.append((normal, offset, face))

    def _insert(self, p: Point):
        visible = [i for i, (n, c, _) in enumerate(self.facets) if linalg.dot(n, p) > c]
        if not visible:
            return
        ridge_count: dict[frozenset, int] = {}
        for i in visible:
            face = self.facets[i][2]
            for skip in range(self.dim):
                ridge = frozenset(face[j] for j in range(self.dim) if j != skip)
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        horizon = [r for r, cnt in ridge_count.items() if cnt == 1]
        dead = set(visible)
        self.facets = [f for i, f in enumerate(self.facets) if i not in dead]
        for ridge in horizon:
            self._add_facet(tuple(sorted(ridge)) + (p,))


def _merge_facets(simplices: list[tuple[Point, int, tuple[Point, ...]]]):
    merged: dict[tuple[Point, int], set[Point]] = {}
    for normal, offset, face in simplices:
        key = _reduce_facet(normal, offset)
        merged.setdefault(key, set()).update(face)
    return merged


class LatticePolytope:
    """Immutable full-dimensional lattice polytope.

    Construct through `convex_hull`; the raw constructor trusts its inputs.
    """

    __slots__ = (
        "dim",
        "vertices",
        "_facets",
        "_simplices",
        "_lattice",
        "_interior",
        "_nvol",
        "_vertex_set",
        "_facet_vertices",
    )

    _construction_hook = None  # tests may register a callable here

    def __init__(self, dim, vertices, facets, simplices, lattice=None):
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self._facets = tuple(facets)
        self._simplices = tuple(simplices)
        self._lattice = frozenset(lattice) if lattice is not None else None
        self._interior = None
        self._nvol = None
        self._vertex_set = frozenset(self.vertices)
        self._facet_vertices = None
        hook = LatticePolytope._construction_hook
        if hook is not None:
            hook(self)

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, n_vertices={len(self.vertices)})"

    def facets(self) -> tuple[Facet, ...]:
        return self._facets

    def facet_vertex_sets(self) -> tuple[frozenset, ...]:
        """For each facet, the set of polytope vertices lying on it."""
        if self._facet_vertices is None:
            out = []
            for normal, offset in self._facets:
                out.append(
                    frozenset(v for v in self.vertices if linalg.dot(normal, v) == offset)
                )
            self._facet_vertices = tuple(out)
        return self._facet_vertices

    def contains(self, point) -> bool:
        p = _as_point(point, self.dim)
        return all(linalg.dot(n, p) <= c for n, c in self._facets)

    def strictly_contains(self, point) -> bool:
        p = _as_point(point, self.dim)
        return all(linalg.dot(n, p) < c for n, c in self._facets)

    def bounding_box(self):
        lows = tuple(min(v[i] for v in self.vertices) for i in range(self.dim))
        highs = tuple(max(v[i] for v in self.vertices) for i in range(self.dim))
        return lows, highs

    # -- lattice point enumeration -----------------------------------------

    def lattice_points(self) -> frozenset:
        if self._lattice is None:
            lows, highs = self.bounding_box()
            cells = 1
            for lo, hi in zip(lows, highs):
                cells *= hi - lo + 1
            cap = max_points()
            if cells > cap:
                raise ResourceCapError(
                    f"bounding box holds {cells} cells, above the cap of {cap}"
                )
            ranges = [range(lo, hi + 1) for lo, hi in zip(lows, highs)]
            facets = self._facets
            found = []
            for p in product(*ranges):
                for n, c in facets:
                    if linalg.dot(n, p) > c:
                        break
                else:
                    found.append(p)
            self._lattice = frozenset(found)
        return self._lattice

    def interior_lattice_points(self) -> frozenset:
        if self._interior is None:
            self._interior = frozenset(
                p
                for p in self.lattice_points()
                if all(linalg.dot(n, p) < c for n, c in self._facets)
            )
        return self._interior

    def n_points(self) -> int:
        return len(self.lattice_points())

    # -- volume -------------------------------------------------------------

    def normalized_volume(self) -> int:
        """d! times the Euclidean volume; an integer."""
        if self._nvol is None:
            if self.dim == 1:
                self._nvol = self.vertices[-1][0] - self.vertices[0][0]
            else:
                base = self.vertices[0]
                total = 0
                for face in self._simplices:
                    rows = [linalg.vec_sub(p, base) for p in face]
                    total += abs(linalg.det(rows))
                self._nvol = total
        return self._nvol

    # -- symmetry ------------------------------------------------------------

    def twice_center(self) -> Optional[Point]:
        """2c for the reflection center c when the vertex set is centrally
        symmetric, else None.  The center itself need not be integral."""
        lows, highs = self.bounding_box()
        twice = tuple(lo + hi for lo, hi in zip(lows, highs))
        for v in self.vertices:
            if linalg.vec_sub(twice, v) not in self._vertex_set:
                return None
        return twice

    def symmetry_center(self) -> Optional[Point]:
        """Lattice center of symmetry, or None.

        A symmetric polytope whose center is a half-integer point (the unit
        cube, say) returns None: reflection in a non-lattice point is not a
        lattice map, so such polytopes do not count as centrally symmetric
        here.
        """
        twice = self.twice_center()
        if twice is None or any(x % 2 for x in twice):
            return None
        return tuple(x // 2 for x in twice)

    # -- lines and slices ----------------------------------------------------

    def line_point_count(self, direction, anchor=None) -> int:
        """Number of lattice points of P on the line anchor + Z * direction."""
        v = _as_point(direction, self.dim)
        if not linalg.is_primitive(v):
            raise NonPrimitiveDirectionError(f"direction {v} is not primitive")
        a = _as_point(anchor, self.dim) if anchor is not None else (0,) * self.dim
        lo, hi = None, None
        for n, c in self._facets:
            step = linalg.dot(n, v)
            room = c - linalg.dot(n, a)
            if step == 0:
                if room < 0:
                    return 0
                continue
            if step > 0:
                bound = room // step
                hi = bound if hi is None else min(hi, bound)
            else:
                bound = -(room // -step)  # ceil(room / step) for step < 0
                lo = bound if lo is None else max(lo, bound)
        if lo is None or hi is None:
            raise DegenerateInputError("line does not leave the polytope; not bounded?")
        return max(0, hi - lo + 1)

    def lattice_diameter(self):
        """Max number of collinear lattice points on a line through the center,
        with the set of primitive directions achieving it.

        Only defined for polytopes centrally symmetric about the origin; a
        maximizing direction is then itself a lattice point of P (the segment
        from -p to p through 0 contains every primitive multiple), so scanning
        primitive points of P is exhaustive.
        """
        center = self.symmetry_center()
        if center != (0,) * self.dim:
            raise NotCentrallySymmetricError(
                "lattice diameter needs central symmetry about the origin"
            )
        best = 1
        argmax: list[Point] = []
        seen = set()
        for p in self.lattice_points():
            if all(x == 0 for x in p):
                continue
            g = math.gcd(*p)
            v = tuple(x // g for x in p)
            for x in v:
                if x != 0:
                    if x < 0:
                        v = linalg.vec_neg(v)
                    break
            if v in seen:
                continue
            seen.add(v)
            count = self.line_point_count(v)
            if count > best:
                best, argmax = count, [v]
            elif count == best:
                argmax.append(v)
        return best, tuple(sorted(argmax))

    def hyperplane_slice_count(self, normal, offset: int) -> int:
        """Lattice points of P on the hyperplane normal . x == offset."""
        n = _as_point(normal, self.dim)
        if not linalg.is_primitive(n):
            raise NonPrimitiveDirectionError(f"normal {n} is not primitive")
        return sum(1 for p in self.lattice_points() if linalg.dot(n, p) == offset)

    # -- transforms ----------------------------------------------------------

    def translate(self, shift) -> "LatticePolytope":
        t = _as_point(shift, self.dim)
        verts = [linalg.vec_add(v, t) for v in self.vertices]
        facets = [Facet(n, c + linalg.dot(n, t)) for n, c in self._facets]
        simplices = [tuple(linalg.vec_add(p, t) for p in f) for f in self._simplices]
        lattice = (
            frozenset(linalg.vec_add(p, t) for p in self._lattice)
            if self._lattice is not None
            else None
        )
        return LatticePolytope(self.dim, verts, facets, simplices, lattice)

    def negate(self) -> "LatticePolytope":
        verts = [linalg.vec_neg(v) for v in self.vertices]
        facets = [Facet(linalg.vec_neg(n), c) for n, c in self._facets]
        simplices = [tuple(linalg.vec_neg(p) for p in f) for f in self._simplices]
        lattice = (
            frozenset(linalg.vec_neg(p) for p in self._lattice)
            if self._lattice is not None
            else None
        )
        return LatticePolytope(self.dim, verts, facets, simplices, lattice)

    def transform(self, sigma: linalg.UnimodularMap) -> "LatticePolytope":
        """Image under an affine unimodular map (rebuilds the hull)."""
        if sigma.dim != self.dim:
            raise DimensionMismatchError("map dimension does not match polytope")
        return convex_hull([sigma(v) for v in self.vertices], self.dim)

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [[str(c) for c in v] for v in self.vertices],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def convex_hull(points: Iterable, dim: int, trusted_lattice=None) -> LatticePolytope:
    """Convex hull of integer points; must be full-dimensional in dim.

    Vertices of the result are exactly the extreme points.  Degenerate input
    raises DegenerateInputError carrying the affine rank found.

    `trusted_lattice` installs a precomputed lattice point set without a
    bounding box scan.  Callers use it only where the set is provably the
    hull's: convex integer regions, or point sets shrunk one vertex at a time.
    """
    pts = sorted({_as_point(p, dim) for p in points})
    if not pts:
        raise DegenerateInputError("no points given", rank=-1)
    if dim < 1:
        raise DimensionMismatchError("dimension must be at least 1")
    _, rows = _affine_basis(pts)
    rank = len(rows)
    if rank < dim:
        raise DegenerateInputError(
            f"points span affine dimension {rank}, need {dim}", rank=rank
        )

    trusted = frozenset(trusted_lattice) if trusted_lattice is not None else None

    if dim == 1:
        lo, hi = pts[0][0], pts[-1][0]
        verts = [(lo,), (hi,)]
        facets = [Facet((1,), hi), Facet((-1,), -lo)]
        simplices = [((lo,),), ((hi,),)]
        return LatticePolytope(dim, verts, facets, simplices, trusted)

    if dim == 2:
        cycle = _hull_2d_cycle(pts)
        facets = []
        simplices = []
        k = len(cycle)
        for i in range(k):
            a, b = cycle[i], cycle[(i + 1) % k]
            normal = (b[1] - a[1], a[0] - b[0])
            normal, offset = _reduce_facet(normal, linalg.dot(normal, a))
            facets.append(Facet(normal, offset))
            simplices.append((a, b))
        return LatticePolytope(dim, cycle, facets, simplices, trusted)

    hull = _IncrementalHull(pts, dim)
    merged = _merge_facets(hull.facets)
    candidates = set()
    for members in merged.values():
        candidates.update(members)
    facet_list = [Facet(n, c) for (n, c) in merged.keys()]
    vertices = []
    for p in candidates:
        normals = [n for (n, c) in merged.keys() if linalg.dot(n, p) == c]
        if linalg.matrix_rank(normals) == dim:
            vertices.append(p)
    simplices = [face for (_, _, face) in hull.facets]
    facet_list.sort()
    return LatticePolytope(dim, vertices, facet_list, simplices, trusted)


def union_hull(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.dim != q.dim:
        raise DimensionMismatchError("union of polytopes in different dimensions")
    return convex_hull(p.vertices + q.vertices, p.dim)


def polytope_from_json(data) -> LatticePolytope:
    """Accepts the dict form or a JSON string; coordinates may be ints or
    decimal strings; vertex order is free."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        dim = int(data["dim"])
        raw = data["vertices"]
        pts = [tuple(int(c) for c in v) for v in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise DegenerateInputError(f"malformed polytope JSON: {exc}") from exc
    return convex_hull(pts, dim)
