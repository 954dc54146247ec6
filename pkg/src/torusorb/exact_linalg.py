"""Exact integer matrix kernels.

Matrices are plain lists of rows of Python ints. Nothing here ever touches
floating point; Python's arbitrary precision integers carry all of the work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]


def _check_square(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError(f"expected a square matrix, got {n} rows of lengths {[len(r) for r in A]}")
    return n


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*A)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = _check_square(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def minor(A: Sequence[Sequence[int]], rows: Sequence[int], cols: Sequence[int]) -> int:
    return determinant([[A[i][j] for j in cols] for i in rows])


def adjugate(A: Sequence[Sequence[int]]) -> IntMatrix:
    """Transpose of the cofactor matrix, so that ``adj(A) @ A == det(A) * I``."""
    n = _check_square(A)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[A[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * determinant(sub)
    return adj


def inverse_rational(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    d = determinant(A)
    if d == 0:
        raise ZeroDivisionError("matrix is singular")
    return [[Fraction(x, d) for x in row] for row in adjugate(A)]


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D`` with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


@dataclass(frozen=True)
class DeterminantDivisors:
    values: tuple[int, ...]  # m_0 = 1, m_1, ..., m_n

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


def _snf_core(A: Sequence[Sequence[int]], track: bool):
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) for row in A]
    U = identity(m) if track else None
    V = identity(n) if track else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        if track:
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in M:
            row[dst] += c * row[src]
        if track:
            for row in V:
                row[dst] += c * row[src]

    for k in range(min(m, n)):
        while True:
            # pivot: smallest |entry|, ties broken by (row, col)
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    v = M[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != k:
                swap_rows(k, pi)
            if pj != k:
                swap_cols(k, pj)
            p = M[k][k]
            dirty = False
            for i in range(k + 1, m):
                if M[i][k]:
                    add_row(i, k, -(M[i][k] // p))
                    dirty = dirty or M[i][k] != 0
            for j in range(k + 1, n):
                if M[k][j]:
                    add_col(j, k, -(M[k][j] // p))
                    dirty = dirty or M[k][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, 1)
        if k < m and k < n and M[k][k] < 0:
            M[k] = [-x for x in M[k]]
            if track:
                U[k] = [-x for x in U[k]]
    return U, M, V


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form with transforms.

    Pivot rule is deterministic: the nonzero entry of least absolute value in
    the active block, ties broken by (row, col) order.
    """
    if not A or not A[0]:
        m = len(A)
        return SNFResult(identity(m), [list(r) for r in A], identity(0))
    U, D, V = _snf_core(A, track=True)
    return SNFResult(U, D, V)


def smith_diagonal(A: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form only (no transforms)."""
    if not A or not A[0]:
        return []
    _, D, _ = _snf_core(A, track=False)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def determinant_divisors(A: Sequence[Sequence[int]]) -> DeterminantDivisors:
    """gcd of all i x i minors for i = 0..n, by direct enumeration."""
    n = _check_square(A)
    values = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, minor(A, rows, cols))
        values.append(g)
    return DeterminantDivisors(tuple(values))


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors r_1 | ... | r_n of a nonsingular square matrix.

    Read off the Smith diagonal; they coincide with m_i / m_{i-1} from
    :func:`determinant_divisors`, which is kept as the independent route.
    """
    _check_square(A)
    if determinant(A) == 0:
        raise ValueError("invariant factors need a nonsingular matrix")
    return smith_diagonal(A)


# --- lattice helpers -----------------------------------------------------

def hermite_rows(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows only: echelon, positive pivots, entries above a
    pivot reduced into [0, pivot).
    """
    M = [list(r) for r in rows if any(r)]
    if not M:
        return []
    n = ncols if ncols is not None else len(M[0])
    out: IntMatrix = []
    col = 0
    while M and col < n:
        nz = [r for r in M if r[col]]
        zero = [r for r in M if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    zero.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for i, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[i] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        M = zero
        col += 1
    return out


def reduce_by_hermite(v: Sequence[int], H: Sequence[Sequence[int]]) -> list[int]:
    """Reduce ``v`` against a row Hermite basis; zero result iff v is in the lattice."""
    v = list(v)
    for row in H:
        c = next(j for j, a in enumerate(row) if a)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def in_lattice(v: Sequence[int], H: Sequence[Sequence[int]]) -> bool:
    return not any(reduce_by_hermite(v, H))


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis (as rows) of ``{x in Z^n : A x = 0}``.

    Row-reduces ``[A^T | I]``; rows whose A^T part vanishes span the kernel.
    """
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    m = len(A)
    aug = [[A[i][j] for i in range(m)] + [int(k == j) for k in range(n)] for j in range(n)]
    H = hermite_rows(aug, m + n)
    return [row[m:] for row in H if not any(row[:m])]


def rank(A: Sequence[Sequence[int]]) -> int:
    return len(hermite_rows(A))
