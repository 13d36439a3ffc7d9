"""Exact matrix helpers over Q and Q(sqrt 2), plus integer lattice tools.

Matrices are plain nested lists.  The field routines (``det``, ``inverse``,
``solve``) only need ``+ - * /`` and equality with zero, so they run
unchanged on :class:`fractions.Fraction` or :class:`~spherepack.scalar.Scalar`
entries.  Integer routines (HNF, kernels, LLL transforms) use Python ints.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .scalar import Scalar


def to_field_matrix(M):
    """Return ``M`` with Fraction entries if every entry is rational, else Scalars."""
    rows = [[Scalar.coerce(x) for x in row] for row in M]
    if all(x.rad == 0 for row in rows for x in row):
        return [[x.rat for x in row] for row in rows]
    return rows


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    Bt = transpose(B)
    return [[_dot(a, b) for b in Bt] for a in A]


def _dot(a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


def congruence(U, G):
    """``U G U^T`` exactly; ``U`` is an integer (or exact) matrix."""
    return matmul(matmul(U, G), transpose(U))


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def _is_zero(x) -> bool:
    return not x


def det(M):
    """Exact determinant by Gaussian elimination."""
    A = [list(row) for row in to_field_matrix(M)]
    n = len(A)
    result = Fraction(1) if not A or not isinstance(A[0][0], Scalar) else Scalar(1)
    for c in range(n):
        p = next((r for r in range(c, n) if not _is_zero(A[r][c])), None)
        if p is None:
            return 0 * result
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        inv = 1 / piv
        for r in range(c + 1, n):
            f = A[r][c]
            if _is_zero(f):
                continue
            f = f * inv
            Ar, Ac = A[r], A[c]
            for k in range(c + 1, n):
                if Ac[k]:
                    Ar[k] = Ar[k] - f * Ac[k]
    return result


def inverse(M):
    """Exact inverse; raises ``ZeroDivisionError`` if singular."""
    A = [list(row) for row in to_field_matrix(M)]
    n = len(A)
    scalar = bool(A) and isinstance(A[0][0], Scalar)
    one = Scalar(1) if scalar else Fraction(1)
    aug = [A[i] + identity(n, one)[i] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if not _is_zero(aug[r][c])), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and not _is_zero(aug[r][c]):
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def solve(A, b):
    """Solve the square system ``A x = b`` exactly."""
    Ainv = inverse(A)
    return [_dot(row, b) for row in Ainv]


def is_symmetric(M) -> bool:
    n = len(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def common_denominator(values) -> int:
    d = 1
    for v in values:
        q = Fraction(v)
        d = d * q.denominator // gcd(d, q.denominator)
    return d


# -- integer lattices -------------------------------------------------------

def hnf(rows: Sequence[Sequence[int]]):
    """Row Hermite normal form of an integer matrix; zero rows are dropped.

    The returned rows are a basis of the Z-span of ``rows``.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m = len(A[0])
    out = []
    col = 0
    while A and col < m:
        while True:
            nz = [i for i, r in enumerate(A) if r[col]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            piv = A[p]
            for i in nz:
                if i != p:
                    q = A[i][col] // piv[col]
                    A[i] = [a - q * b for a, b in zip(A[i], piv)]
        if nz:
            piv = A.pop(nz[0])
            if piv[col] < 0:
                piv = [-a for a in piv]
            out.append(piv)
            A = [r for r in A if any(r)]
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        c = next(j for j, a in enumerate(row) if a)
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def integer_kernel(A: Sequence[Sequence[int]]):
    """Basis (as rows) of the integer vectors ``x`` with ``A x = 0``."""
    m = len(A)
    n = len(A[0])
    # rows: [A^T row | identity row]
    M = [[int(A[r][c]) for r in range(m)] + [1 if k == c else 0 for k in range(n)]
         for c in range(n)]
    H = hnf(M)
    return [row[m:] for row in H if not any(row[:m])]


def unimodular_with_first_column(c: Sequence[int]):
    """Unimodular integer matrix ``N`` whose first column is the primitive vector ``c``."""
    c = [int(x) for x in c]
    n = len(c)
    g = 0
    for x in c:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("vector is not primitive")
    v = list(c)
    N = [[int(i == j) for j in range(n)] for i in range(n)]
    # elementary row ops E on v (v <- E v) are mirrored as N <- N E^{-1}
    while True:
        nz = [i for i in range(n) if v[i] != 0]
        if len(nz) == 1:
            break
        nz.sort(key=lambda i: abs(v[i]))
        p = nz[0]
        for i in nz[1:]:
            q = v[i] // v[p]
            v[i] -= q * v[p]
            # row_i -= q row_p  =>  col_p of N += q col_i
            for r in range(n):
                N[r][p] += q * N[r][i]
    p = next(i for i in range(n) if v[i] != 0)
    if p != 0:
        v[0], v[p] = v[p], v[0]
        for r in range(n):
            N[r][0], N[r][p] = N[r][p], N[r][0]
    if v[0] == -1:
        for r in range(n):
            N[r][0] = -N[r][0]
    return N


def lll_gram(G, delta: float = 0.99):
    """LLL on a positive definite Gram matrix.

    Works in floating point on ``U G U^T`` but the transform ``U`` is an exact
    integer unimodular matrix.  Returns ``(U, Uinv)`` as int64 arrays.
    """
    Gf = np.array([[float(x) for x in row] for row in G], dtype=float)
    n = Gf.shape[0]
    U = np.eye(n, dtype=np.int64)
    Uinv = np.eye(n, dtype=np.int64)
    if n <= 1:
        return U, Uinv
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 100000:
            break
        Gc = U @ Gf @ U.T
        C = np.linalg.cholesky(Gc)
        d = np.diag(C)
        mu = C / d
        for j in range(k - 1, -1, -1):
            q = int(np.rint(mu[k, j]))
            if q:
                U[k] -= q * U[j]
                Uinv[:, j] += q * Uinv[:, k]
                mu[k, : j + 1] -= q * mu[j, : j + 1]
        Gc = U @ Gf @ U.T
        C = np.linalg.cholesky(Gc)
        B = np.diag(C) ** 2
        m = C[k, k - 1] / C[k - 1, k - 1]
        if B[k] < (delta - m * m) * B[k - 1]:
            U[[k - 1, k]] = U[[k, k - 1]]
            Uinv[:, [k - 1, k]] = Uinv[:, [k, k - 1]]
            k = max(k - 1, 1)
        else:
            k += 1
    return U, Uinv
