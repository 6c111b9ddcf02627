"""Equivalence of lattice polytopes under affine unimodular maps.

Two polytopes are equivalent when some x -> xU + v with integer U, |det U| = 1
carries one vertex set onto the other.  Testing works frame-first: fix an
anchor vertex and an independent difference frame in P, enumerate candidate
images in Q filtered by combinatorial vertex profiles, solve for U exactly,
and confirm on the full vertex sets.  Vertex set equality is sufficient since
affine bijections of the lattice preserve extreme points.

`canonical_form` produces a string equal for two polytopes iff they are
equivalent, by minimizing a column-Hermite normalized vertex encoding over
anchor and frame choices.  No hashing, so no collisions.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import math

from . import linalg
from .errors import (
    DimensionMismatchError,
    NotCentrallySymmetricError,
    ResourceCapError,
)
from .linalg import UnimodularMap
from .polytope import LatticePolytope

CANONICAL_FRAME_CAP = 500_000
CLOSURE_EXHAUSTIVE_LIMIT = 600


def vertex_profiles(p: LatticePolytope) -> dict:
    """Per-vertex combinatorial invariant: how many facets pass through the
    vertex and the sorted vertex counts of those facets."""
    fv = p.facet_vertex_sets()
    out = {}
    for v in p.vertices:
        sizes = tuple(sorted(len(s) for s in fv if v in s))
        out[v] = (len(sizes), sizes)
    return out


def _cheap_invariants(p: LatticePolytope):
    fv = p.facet_vertex_sets()
    return (
        p.dim,
        len(p.vertices),
        p.normalized_volume(),
        tuple(sorted(len(s) for s in fv)),
        p.symmetry_center() is not None,
    )


def vertex_adjacency(p: LatticePolytope) -> dict:
    """Vertex -> tuple of edge-adjacent vertices.

    Two vertices span an edge exactly when the facets containing both have
    normals of rank dim - 1 (their intersection is then a 1-face)."""
    fv = p.facet_vertex_sets()
    facets = p.facets()
    verts = p.vertices
    adj: dict = {v: [] for v in verts}
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            common = [facets[k].normal for k in range(len(facets)) if u in fv[k] and v in fv[k]]
            if len(common) >= p.dim - 1 and linalg.matrix_rank(common) == p.dim - 1:
                adj[u].append(v)
                adj[v].append(u)
    return {v: tuple(sorted(nb)) for v, nb in adj.items()}


def _pair_invariant(p: LatticePolytope, fv, u, v):
    """Invariant of an ordered vertex pair: lattice length of the edge and
    the sorted sizes of the facets containing both ends."""
    g = linalg.gcd_vector(linalg.vec_sub(v, u))
    sizes = tuple(sorted(len(s) for s in fv if u in s and v in s))
    return (g, sizes)


def _frame(p: LatticePolytope, profiles: dict, adj: dict):
    """Anchor vertex plus d adjacent vertices with independent differences.

    Edge directions at a vertex span the space, and adjacency survives
    unimodular maps, so candidate images only range over neighbors of the
    anchor image.  Rare profile classes are preferred to cut branching."""
    class_size = Counter(profiles.values())
    anchor = min(p.vertices, key=lambda v: (class_size[profiles[v]], profiles[v], v))
    order = sorted(adj[anchor], key=lambda v: (class_size[profiles[v]], profiles[v], v))
    rows: list = []
    frame: list = []
    for v in order:
        if len(frame) == p.dim:
            break
        cand = linalg.vec_sub(v, anchor)
        if linalg.matrix_rank(rows + [cand]) > len(rows):
            rows.append(cand)
            frame.append(v)
    return anchor, frame


def _solve_frame(p0, frame_p, q0, frame_q) -> Optional[UnimodularMap]:
    d_p = tuple(linalg.vec_sub(v, p0) for v in frame_p)
    d_q = tuple(linalg.vec_sub(v, q0) for v in frame_q)
    u = linalg.solve_right(d_p, d_q)
    if u is None or abs(linalg.det(u)) != 1:
        return None
    shift = linalg.vec_sub(q0, linalg.row_times_matrix(p0, u))
    return UnimodularMap(u, shift)


def _witness_ok(p: LatticePolytope, q: LatticePolytope, sigma: UnimodularMap) -> bool:
    """Re-check a candidate witness on the full lattice point sets.

    Vertex-set equality already implies this, but the redundant check is cheap
    at the sizes handled here and guards the hull machinery end to end.
    """
    return {sigma(z) for z in p.lattice_points()} == set(q.lattice_points())


def find_maps(p: LatticePolytope, q: LatticePolytope) -> Iterator[UnimodularMap]:
    """All affine unimodular maps carrying p onto q, each exactly once."""
    if p.dim != q.dim:
        return
    if _cheap_invariants(p) != _cheap_invariants(q):
        return
    prof_p = vertex_profiles(p)
    prof_q = vertex_profiles(q)
    if Counter(prof_p.values()) != Counter(prof_q.values()):
        return
    adj_p = vertex_adjacency(p)
    adj_q = vertex_adjacency(q)
    fv_p = p.facet_vertex_sets()
    fv_q = q.facet_vertex_sets()
    anchor, frame = _frame(p, prof_p, adj_p)
    frame_keys = [
        (prof_p[v], _pair_invariant(p, fv_p, anchor, v)) for v in frame
    ]
    target = set(q.vertices)
    p_verts = p.vertices
    anchor_cands = [v for v in q.vertices if prof_q[v] == prof_p[anchor]]

    def extend(q0, cand_lists, chosen, rows):
        k = len(chosen)
        if k == p.dim:
            sigma = _solve_frame(anchor, frame, q0, chosen)
            if (
                sigma is not None
                and {sigma(v) for v in p_verts} == target
                and _witness_ok(p, q, sigma)
            ):
                yield sigma
            return
        for cand in cand_lists[k]:
            row = linalg.vec_sub(cand, q0)
            if linalg.matrix_rank(rows + [row]) == k + 1:
                yield from extend(q0, cand_lists, chosen + [cand], rows + [row])

    for q0 in anchor_cands:
        nbrs = adj_q[q0]
        cand_lists = [
            [w for w in nbrs if (prof_q[w], _pair_invariant(q, fv_q, q0, w)) == key]
            for key in frame_keys
        ]
        if any(not c for c in cand_lists):
            continue
        yield from extend(q0, cand_lists, [], [])


def find_map(p: LatticePolytope, q: LatticePolytope) -> Optional[UnimodularMap]:
    for sigma in find_maps(p, q):
        return sigma
    return None


def are_equivalent(
    p: LatticePolytope, q: LatticePolytope
) -> Optional[UnimodularMap]:
    """A verified witness map carrying p onto q, or None if inequivalent."""
    return find_map(p, q)


# -- symmetry groups ---------------------------------------------------------


@dataclass(frozen=True)
class SymmetryGroup:
    """Finite group of affine unimodular self-maps, elements listed sorted."""

    dim: int
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma: UnimodularMap) -> bool:
        return sigma in set(self.elements)

    def validate_closure(self, samples: int = 2000, seed: int = 0) -> bool:
        """Exhaustive composition check when small; random pairs when large."""
        elems = set(self.elements)
        if linalg.identity_map(self.dim) not in elems:
            return False
        for g in self.elements:
            if linalg.inverse(g) not in elems:
                return False
        if self.order <= CLOSURE_EXHAUSTIVE_LIMIT:
            for g in self.elements:
                for h in self.elements:
                    if linalg.compose(g, h) not in elems:
                        return False
            return True
        rng = random.Random(seed)
        pool = self.elements
        for _ in range(samples):
            g = rng.choice(pool)
            h = rng.choice(pool)
            if linalg.compose(g, h) not in elems:
                return False
        return True


def unimodular_group(p: LatticePolytope) -> SymmetryGroup:
    """Full affine unimodular symmetry group of p."""
    elems = sorted(find_maps(p, p), key=lambda s: (s.matrix, s.translation))
    return SymmetryGroup(p.dim, tuple(elems))


def orthogonal_unimodular_group(p: LatticePolytope) -> SymmetryGroup:
    """Subgroup whose linear parts are orthogonal (signed permutations)."""
    elems = [s for s in find_maps(p, p) if linalg.is_orthogonal(s)]
    elems.sort(key=lambda s: (s.matrix, s.translation))
    return SymmetryGroup(p.dim, tuple(elems))


def signed_permutation_group(d: int) -> SymmetryGroup:
    elems = sorted(
        linalg.signed_permutation_maps(d), key=lambda s: (s.matrix, s.translation)
    )
    return SymmetryGroup(d, tuple(elems))


GENERATE_MAX_DIM = 6


def generate_O_d(d: int) -> SymmetryGroup:
    """The group of signed coordinate permutations in dimension d, order
    2^d * d!.  Supported for 1 <= d <= GENERATE_MAX_DIM."""
    if not 1 <= d <= GENERATE_MAX_DIM:
        raise DimensionMismatchError(
            f"signed permutation group supported for 1..{GENERATE_MAX_DIM}, got {d}"
        )
    return signed_permutation_group(d)


@dataclass(frozen=True)
class DivisibilityReport:
    order: int
    bound: int
    divides: bool


def divides_bound(p: LatticePolytope) -> DivisibilityReport:
    """For a centrally symmetric polytope, check that the order of its
    orthogonal symmetry group divides 2^d * d!.

    The group embeds into the signed permutations by reading off linear parts
    (an affine map fixing the center is determined by its linear part), so the
    divisibility is Lagrange's theorem; this computes both sides explicitly.
    Raises NotCentrallySymmetricError when p has no center of symmetry.
    """
    if p.twice_center() is None:
        raise NotCentrallySymmetricError(
            "orthogonal-group divisibility applies to centrally symmetric polytopes"
        )
    order = orthogonal_unimodular_group(p).order
    bound = (2**p.dim) * math.factorial(p.dim)
    return DivisibilityReport(order, bound, bound % order == 0)


def conjugate_group(group: SymmetryGroup, sigma: UnimodularMap) -> SymmetryGroup:
    """Group of sigma(P) when `group` is the group of P."""
    if group.dim != sigma.dim:
        raise DimensionMismatchError("conjugating map has the wrong dimension")
    inv = linalg.inverse(sigma)
    elems = sorted(
        (linalg.compose(linalg.compose(inv, g), sigma) for g in group.elements),
        key=lambda s: (s.matrix, s.translation),
    )
    return SymmetryGroup(group.dim, tuple(elems))


# -- canonical forms ----------------------------------------------------------


def canonical_vertices(p: LatticePolytope, frame_cap: int = CANONICAL_FRAME_CAP):
    """Distinguished vertex tuple of the equivalence class of p.

    Minimizes, over anchor vertices of smallest profile and over ordered
    independent frames of edge directions at the anchor, the sorted image of
    the vertex set under the frame's column-Hermite normalizer.  Every choice
    made is equivariant, so equivalent polytopes reach the same minimum and
    inequivalent ones cannot (the minimizing map itself witnesses equivalence
    with the output).
    """
    profiles = vertex_profiles(p)
    adj = vertex_adjacency(p)
    low = min(profiles.values())
    anchors = [v for v in p.vertices if profiles[v] == low]
    best = None
    seen = 0
    d = p.dim
    verts = p.vertices

    for w0 in anchors:
        diffs = [linalg.vec_sub(v, w0) for v in verts]
        nonzero = [linalg.vec_sub(v, w0) for v in adj[w0]]

        def extend(rows):
            nonlocal best, seen
            if len(rows) == d:
                seen += 1
                if seen > frame_cap:
                    raise ResourceCapError(
                        f"canonical form exceeded {frame_cap} frames"
                    )
                u = linalg.column_hermite_transform(tuple(rows))
                img = tuple(sorted(linalg.row_times_matrix(dv, u) for dv in diffs))
                if best is None or img < best:
                    best = img
                return
            for dv in nonzero:
                if linalg.matrix_rank(rows + [dv]) == len(rows) + 1:
                    extend(rows + [dv])

        extend([])
    return best


def canonical_form(p: LatticePolytope, frame_cap: int = CANONICAL_FRAME_CAP) -> str:
    """Hex string; equal for two polytopes iff they are equivalent."""
    verts = canonical_vertices(p, frame_cap)
    body = f"{p.dim}:" + ";".join(",".join(str(c) for c in v) for v in verts)
    return body.encode("ascii").hex()


def partition_classes(polys: Sequence[LatticePolytope]) -> list:
    """Indices of `polys` grouped into equivalence classes."""
    buckets: dict = {}
    for i, p in enumerate(polys):
        buckets.setdefault(_cheap_invariants(p), []).append(i)
    classes: list = []
    for members in buckets.values():
        reps: list = []
        for i in members:
            for cls in reps:
                if are_equivalent(polys[cls[0]], polys[i]):
                    cls.append(i)
                    break
            else:
                reps.append([i])
        classes.extend(reps)
    classes.sort(key=lambda c: c[0])
    return classes
