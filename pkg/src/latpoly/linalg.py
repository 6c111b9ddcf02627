"""Exact integer linear algebra for lattice geometry.

Points are plain tuples of Python ints (arbitrary precision), matrices are
tuples of row tuples.  Affine maps act on row vectors from the right,
x -> x @ U + v, so row i of U is the image of the i-th basis vector.  No
floating point enters any predicate in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Optional

from .errors import DimensionMismatchError

Point = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def dot(a: Point, b: Point) -> int:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot of length {len(a)} with {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vec_add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Point) -> Point:
    return tuple(-x for x in a)


def vec_scale(c: int, a: Point) -> Point:
    return tuple(c * x for x in a)


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b)
    if any(len(row) != k for row in a):
        raise DimensionMismatchError("matrix product shapes do not match")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def row_times_matrix(p: Point, m: Matrix) -> Point:
    if len(p) != len(m):
        raise DimensionMismatchError("row vector length does not match matrix rows")
    cols = list(zip(*m))
    return tuple(sum(x * y for x, y in zip(p, col)) for col in cols)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def det(matrix: Iterable[Iterable[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Exact over the integers; every interior division is known to be exact.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatchError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _minor(matrix: Matrix, drop_row: int, drop_col: int) -> Matrix:
    return tuple(
        tuple(x for j, x in enumerate(row) if j != drop_col)
        for i, row in enumerate(matrix)
        if i != drop_row
    )


def adjugate(matrix: Matrix) -> Matrix:
    # adj[i][j] is the (j,i) cofactor, so matrix @ adj == det * I.
    n = len(matrix)
    if n == 1:
        return ((1,),)
    return tuple(
        tuple((-1) ** (i + j) * det(_minor(matrix, j, i)) for j in range(n))
        for i in range(n)
    )


def matrix_rank(rows: Iterable[Point]) -> int:
    """Rank of an integer matrix via fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for i in range(row + 1, len(m)):
            if m[i][col] != 0:
                a, b = m[row][col], m[i][col]
                g = math.gcd(a, b)
                ca, cb = a // g, b // g
                m[i] = [cb * x - ca * y for x, y in zip(m[row], m[i])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def gcd_vector(p: Point) -> int:
    return math.gcd(*p) if p else 0


def is_primitive(p: Point) -> bool:
    """True when the coordinates are coprime; the zero vector is not primitive."""
    if not p or all(x == 0 for x in p):
        return False
    return math.gcd(*p) == 1


@dataclass(frozen=True)
class UnimodularMap:
    """Affine lattice automorphism x -> x @ matrix + translation."""

    matrix: Matrix
    translation: Point

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        shift = tuple(int(x) for x in self.translation)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", shift)
        d = len(mat)
        if d == 0 or any(len(row) != d for row in mat) or len(shift) != d:
            raise DimensionMismatchError("unimodular map needs a square matrix and matching shift")
        if abs(det(mat)) != 1:
            raise ValueError("matrix determinant must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, p: Point) -> Point:
        return apply_map(self, p)


def identity_map(d: int) -> UnimodularMap:
    return UnimodularMap(identity_matrix(d), (0,) * d)


def translation_map(shift: Point) -> UnimodularMap:
    return UnimodularMap(identity_matrix(len(shift)), tuple(shift))


def apply_map(sigma: UnimodularMap, p: Point) -> Point:
    if len(p) != sigma.dim:
        raise DimensionMismatchError("point dimension does not match map")
    return vec_add(row_times_matrix(p, sigma.matrix), sigma.translation)


def compose(first: UnimodularMap, second: UnimodularMap) -> UnimodularMap:
    """Map applying `first` and then `second`."""
    if first.dim != second.dim:
        raise DimensionMismatchError("cannot compose maps of different dimension")
    matrix = mat_mul(first.matrix, second.matrix)
    shift = vec_add(row_times_matrix(first.translation, second.matrix), second.translation)
    return UnimodularMap(matrix, shift)


def inverse(sigma: UnimodularMap) -> UnimodularMap:
    # |det| = 1, so the inverse matrix is det * adjugate, exactly integral.
    d = det(sigma.matrix)
    inv = tuple(tuple(d * x for x in row) for row in adjugate(sigma.matrix))
    shift = vec_neg(row_times_matrix(sigma.translation, inv))
    return UnimodularMap(inv, shift)


def is_orthogonal(sigma: UnimodularMap) -> bool:
    """True when the linear part satisfies U @ U^T == I."""
    return mat_mul(sigma.matrix, transpose(sigma.matrix)) == identity_matrix(sigma.dim)


def signed_permutation_maps(d: int):
    """Yield all maps permuting coordinates with sign flips, fixing the origin."""
    zero = (0,) * d
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            rows = []
            for i in range(d):
                row = [0] * d
                row[perm[i]] = signs[i]
                rows.append(tuple(row))
            yield UnimodularMap(tuple(rows), zero)


def is_signed_permutation(sigma: UnimodularMap) -> bool:
    if any(x != 0 for x in sigma.translation):
        return False
    seen_cols = set()
    for row in sigma.matrix:
        nonzero = [(j, x) for j, x in enumerate(row) if x != 0]
        if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
            return False
        seen_cols.add(nonzero[0][0])
    return len(seen_cols) == sigma.dim


def solve_right(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Integer solution X of a @ X == b, or None.

    Uses the adjugate: X = adj(a) @ b / det(a), returned only when every
    division is exact.
    """
    d = det(a)
    if d == 0:
        return None
    num = mat_mul(adjugate(a), b)
    rows = []
    for row in num:
        out = []
        for x in row:
            q, r = divmod(x, d)
            if r != 0:
                return None
            out.append(q)
        rows.append(tuple(out))
    return tuple(rows)


def column_hermite_transform(d_matrix: Matrix) -> Matrix:
    """Unimodular U with d_matrix @ U in column Hermite normal form.

    The normal form is lower triangular with positive pivots and, left of
    each pivot, entries reduced into [0, pivot).  It is the unique such form
    reachable by unimodular column operations, which makes U @ (anything
    built from it) a well-defined normalizer for canonical encodings.
    Requires a nonsingular input.
    """
    n = len(d_matrix)
    h = [[int(x) for x in row] for row in d_matrix]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_swap(a, b):
        for row in h:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    def col_negate(a):
        for row in h:
            row[a] = -row[a]
        for row in u:
            row[a] = -row[a]

    def col_addmul(dst, src, q):
        if q == 0:
            return
        for row in h:
            row[dst] += q * row[src]
        for row in u:
            row[dst] += q * row[src]

    for i in range(n):
        while True:
            live = [j for j in range(i, n) if h[i][j] != 0]
            if not live:
                raise ValueError("singular matrix has no Hermite transform here")
            j = min(live, key=lambda c: abs(h[i][c]))
            if j != i:
                col_swap(i, j)
            if h[i][i] < 0:
                col_negate(i)
            done = True
            for c in range(i + 1, n):
                q = h[i][c] // h[i][i]
                col_addmul(c, i, -q)
                if h[i][c] != 0:
                    done = False
            if done:
                break
        for c in range(i):
            q = h[i][c] // h[i][i]
            col_addmul(c, i, -q)
    return tuple(tuple(row) for row in u)
