"""Exact integer linear algebra kernels.

Matrices are plain lists of lists of Python ints (row major); vectors are
tuples of ints. Everything here is arbitrary precision and fraction free:
no floats anywhere. Rationals, where they appear at the API edges of other
modules, are `fractions.Fraction`.

The normal forms follow fixed conventions so that outputs are reproducible:

* `hermite_normal_form` is row style, pivots positive, entries above a
  pivot reduced into [0, pivot).
* `smith_normal_form` returns nonnegative diagonal entries with the
  divisibility chain d1 | d2 | ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InternalConsistencyError

Vector = tuple[int, ...]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# basic matrix helpers


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in M]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    if not M:
        return []
    return [[M[i][j] for i in range(len(M))] for j in range(len(M[0]))]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DomainError("matrix shapes do not match")
    if not B:
        return [[] for _ in A]
    cols = range(len(B[0]))
    return [[sum(a[k] * B[k][j] for k in range(len(a))) for j in cols] for a in A]


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in A)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vec_sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# determinant and rank (Bareiss, fraction free)


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise DomainError("determinant of a non-square matrix")
    a = copy_matrix(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (fraction-free elimination)."""
    a = copy_matrix(M)
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (a[i][j] * a[r][col] - a[i][col] * a[r][j]) // prev
            a[i][col] = 0
        prev = a[r][col]
        r += 1
        if r == m:
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Affine dimension of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [list(vec_sub(p, base)) for p in points[1:]]
    if not diffs:
        return 0
    return rank(diffs)


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U * M = H, det(U) = +-1, pivot entries of H
    positive and entries above each pivot reduced into [0, pivot).
    """
    H = copy_matrix(M)
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for col in range(n):
        # gather the gcd of column `col` into row r, zeroing the rows below
        piv = None
        for i in range(r, m):
            if H[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            while H[i][col] != 0:
                q = H[r][col] // H[i][col]
                for j in range(n):
                    H[r][j] -= q * H[i][j]
                for j in range(m):
                    U[r][j] -= q * U[i][j]
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        # reduce the entries above the pivot
        p = H[r][col]
        for i in range(r):
            q = H[i][col] // p
            if q:
                for j in range(n):
                    H[i][j] -= q * H[r][j]
                for j in range(m):
                    U[i][j] -= q * U[r][j]
        r += 1
        if r == m:
            break
    return H, U


def unimodular_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(M)
    H, U = hermite_normal_form(M)
    if H != identity(n):
        raise DomainError("matrix is not unimodular")
    return U


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    n = len(M)
    if any(len(row) != n for row in M):
        return False
    return abs(det(M)) == 1 if n else True


def kernel_basis(M: Sequence[Sequence[int]]) -> list[Vector]:
    """Basis of the integer kernel {x : M x = 0}, a saturated lattice.

    Derived from the HNF transform of the transpose: rows of U aligned
    with zero rows of H span the kernel.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [tuple(row) for row in identity(n)]
    H, U = hermite_normal_form(transpose(M))
    out = []
    for i, row in enumerate(H):
        if all(x == 0 for x in row):
            out.append(tuple(U[i]))
    return out


# ---------------------------------------------------------------------------
# Smith normal form


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _smith_engine(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    D = copy_matrix(M)
    m = len(D)
    n = len(D[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def clear_col_entry(t, i):
        # zero D[i][t] using row t; keeps det(U) = +-1
        a, b = D[t][t], D[i][t]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            for j in range(n):
                D[i][j] -= q * D[t][j]
            for j in range(m):
                U[i][j] -= q * U[t][j]
            return
        g, x, y = _xgcd(a, b)
        u, v = -(b // g), a // g  # u*a + v*b = 0, det = 1
        for j in range(n):
            dt, di = D[t][j], D[i][j]
            D[t][j] = x * dt + y * di
            D[i][j] = u * dt + v * di
        for j in range(m):
            ut, ui = U[t][j], U[i][j]
            U[t][j] = x * ut + y * ui
            U[i][j] = u * ut + v * ui

    def clear_row_entry(t, j):
        a, b = D[t][t], D[t][j]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            for i in range(m):
                D[i][j] -= q * D[i][t]
            for i in range(n):
                V[i][j] -= q * V[i][t]
            return
        g, x, y = _xgcd(a, b)
        u, v = -(b // g), a // g
        for i in range(m):
            dt, dj = D[i][t], D[i][j]
            D[i][t] = x * dt + y * dj
            D[i][j] = u * dt + v * dj
        for i in range(n):
            vt, vj = V[i][t], V[i][j]
            V[i][t] = x * vt + y * vj
            V[i][j] = u * vt + v * vj

    def diagonalize_from(t):
        while True:
            for i in range(t + 1, m):
                clear_col_entry(t, i)
            for j in range(t + 1, n):
                clear_row_entry(t, j)
            if all(D[i][t] == 0 for i in range(t + 1, m)) and all(
                D[t][j] == 0 for j in range(t + 1, n)
            ):
                return

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for r_ in range(m):
                D[r_][t], D[r_][j] = D[r_][j], D[r_][t]
            for r_ in range(n):
                V[r_][t], V[r_][j] = V[r_][j], V[r_][t]
        diagonalize_from(t)
        t += 1

    def make_nonneg(i):
        if D[i][i] < 0:
            for j in range(n):
                D[i][j] = -D[i][j]
            for j in range(m):
                U[i][j] = -U[i][j]

    for i in range(min(m, n)):
        make_nonneg(i)

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a != 0 and b % a != 0:
                # fold d_{i+1} under the pivot, re-diagonalize the pair
                for r_ in range(m):
                    D[r_][i] += D[r_][i + 1]
                for r_ in range(n):
                    V[r_][i] += V[r_][i + 1]
                diagonalize_from(i)
                make_nonneg(i)
                make_nonneg(i + 1)
                changed = True
    return U, D, V


def smith_normal_form(
    M: Sequence[Sequence[int]],
) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (U, D, V) with U * M * V = D.

    D is diagonal with nonnegative entries satisfying d1 | d2 | ...,
    and U, V are unimodular.
    """
    U, D, V = _smith_engine(M)
    if mat_mul(mat_mul(U, copy_matrix(M)), V) != D:
        raise InternalConsistencyError("smith normal form identity failed")
    return U, D, V


def smith_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    _, D, _ = _smith_engine(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------------------
# primitive vectors and lattice indices


def primitive(v: Sequence[int]) -> Vector:
    """v divided by the gcd of its entries; direction is preserved."""
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise DomainError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def lattice_index(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by `gens` inside (span of gens) cap Z^n.

    Equals the number of lattice points in the half-open parallelotope
    spanned by the generators, and the product of the nonzero Smith
    diagonal entries of the generator matrix.
    """
    gens = [list(g) for g in gens]
    if not gens:
        return 1
    diag = smith_diagonal(gens)
    nonzero = [d for d in diag if d != 0]
    if len(nonzero) != len(gens):
        raise DomainError("generators not independent")
    out = 1
    for d in nonzero:
        out *= d
    return out


def span_lattice_index(gens: Sequence[Sequence[int]]) -> int:
    """Like `lattice_index` but tolerates linearly dependent generators."""
    gens = [list(g) for g in gens]
    if not gens:
        return 1
    out = 1
    for d in smith_diagonal(gens):
        if d != 0:
            out *= d
    return out


# ---------------------------------------------------------------------------
# affine lattice normalization


@dataclass(frozen=True)
class AffineNormalization:
    """Affine change of coordinates onto the lattice of an affine span.

    `forward` maps Z^n integer points to Z^d by x -> A (x - base); restricted
    to (affine span of the inputs) cap Z^n it is a bijection onto Z^d.
    `backward` is its exact inverse on the span: y -> base + y . basis.
    The basis rows generate the saturated direction lattice of the span.
    """

    matrix: tuple[Vector, ...]  # d x n
    base: Vector  # in Z^n
    basis: tuple[Vector, ...]  # d rows in Z^n
    dim: int

    def forward(self, point: Sequence[int]) -> Vector:
        return tuple(dot(row, point) - dot(row, self.base) for row in self.matrix)

    def backward(self, coords: Sequence[int]) -> Vector:
        out = list(self.base)
        for c, row in zip(coords, self.basis):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(out)


def affine_normalize(points: Sequence[Sequence[int]]) -> AffineNormalization:
    """Normalize a set of lattice points onto the full lattice of their span.

    The direction lattice is saturated via the Smith form, so `forward`
    hits every lattice point of the affine span, not only the sublattice
    generated by differences of the inputs. Example: the segment from
    (0, 0) to (2, 2) normalizes to [0, 2] in Z, its midpoint included.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise DomainError("affine_normalize needs at least one point")
    n = len(pts[0])
    base = min(pts)
    diffs = [list(vec_sub(p, base)) for p in pts if p != base]
    if not diffs or n == 0:
        return AffineNormalization(matrix=(), base=base, basis=(), dim=0)

    _, D, V = _smith_engine(diffs)
    d = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    if d == 0:
        return AffineNormalization(matrix=(), base=base, basis=(), dim=0)
    Vinv = unimodular_inverse(V)
    W = [list(Vinv[i]) for i in range(d)]
    # tidy the basis; the row lattice is unchanged under left-unimodular ops
    Wh, _ = hermite_normal_form(W)
    W = [row for row in Wh if any(row)]
    if len(W) != d:
        raise InternalConsistencyError("saturation basis lost rank")

    # extend W to a unimodular matrix and read the dual projection off its
    # inverse: A = first d rows of (Wtilde^T)^-1 gives A . W^T = I_d
    _, D2, V2 = _smith_engine(W)
    if any(D2[i][i] != 1 for i in range(d)):
        raise InternalConsistencyError("span lattice basis is not saturated")
    V2inv = unimodular_inverse(V2)
    Wtilde = [list(r) for r in W] + [list(V2inv[i]) for i in range(d, n)]
    Winv = unimodular_inverse(Wtilde)
    A = [tuple(Winv[j][i] for j in range(n)) for i in range(d)]

    norm = AffineNormalization(
        matrix=tuple(A), base=base, basis=tuple(tuple(r) for r in W), dim=d
    )
    for p in pts:
        if norm.backward(norm.forward(p)) != p:
            raise InternalConsistencyError("affine normalization failed to invert")
    return norm


def bounding_box(points: Iterable[Sequence[int]]) -> tuple[Vector, Vector]:
    """Componentwise (min, max) over a nonempty point collection."""
    pts = list(points)
    lo = tuple(min(p[i] for p in pts) for i in range(len(pts[0])))
    hi = tuple(max(p[i] for p in pts) for i in range(len(pts[0])))
    return lo, hi
