"""Isometry testing by backtracking, and the modularity checks built on it.

``isometry_equivalent(L1, L2)`` looks for integer rows ``y_0..y_{n-1}`` in
the coordinates of ``L2`` whose inner products reproduce a reduced Gram of
``L1``.  Each ``y_i`` is drawn from the (precomputed) vectors of ``L2`` with
the right norm; partial choices are pruned by their inner products with the
rows already fixed.  Determinants agree, so any complete choice is
automatically unimodular.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .enumeration import DEFAULT_MAX_NODES
from .errors import PreconditionError, RepresentationError, ResourceError
from .lattice import Lattice, determinant, dual, is_integral
from .scalar import Scalar

DEFAULT_SEARCH_BUDGET = 10_000_000


class _IntegerForm:
    """``G = (A + B sqrt2) / den`` with integer A, B, so inner products are exact ints."""

    def __init__(self, G):
        entries = [Scalar.coerce(x) for row in G for x in row]
        den = linalg.common_denominator([e.rat for e in entries] + [e.rad for e in entries])
        n = len(G)
        self.den = den
        self.A = np.array([[int(Scalar.coerce(G[i][j]).rat * den) for j in range(n)]
                           for i in range(n)], dtype=object)
        self.B = np.array([[int(Scalar.coerce(G[i][j]).rad * den) for j in range(n)]
                           for i in range(n)], dtype=object)
        self.has_rad = bool(np.any(self.B != 0))

    def target(self, value: Scalar):
        value = Scalar.coerce(value)
        return int(value.rat * self.den), int(value.rad * self.den)


def _norm_key(s: Scalar):
    return (s.rat, s.rad)


def isometry_equivalent(L1: Lattice, L2: Lattice, budget: int = DEFAULT_SEARCH_BUDGET,
                        max_nodes: int = DEFAULT_MAX_NODES) -> Optional[np.ndarray]:
    """Integer ``U`` with ``U G2 U^T = G1``, or ``None`` if the lattices are not isometric.

    ``budget`` caps the number of backtracking steps; running out raises
    :class:`ResourceError` rather than answering ``None``.
    """
    n = L1.dim
    if L2.dim != n:
        return None
    if L1.is_rational != L2.is_rational:
        # a rational Gram and a genuinely irrational one cannot be congruent over Z
        return None
    if determinant(L1) != determinant(L2):
        return None
    if L1.gram == L2.gram:
        return np.eye(n, dtype=np.int64)

    R = L1.enumerator._reduced[0]  # rows: reduced basis of L1
    G1r = linalg.congruence(R.tolist(), L1.field_gram)
    diag = [Scalar.coerce(G1r[i][i]) for i in range(n)]
    top = max(diag)
    V2, N2 = L2.enumerator.vectors(top, max_nodes=max_nodes)
    V1, N1 = L1.enumerator.vectors(top, max_nodes=max_nodes)
    # norm statistics up to the largest basis norm must agree
    c1, c2 = {}, {}
    for s in N1.values():
        c1[_norm_key(s)] = c1.get(_norm_key(s), 0) + 1
    for s in N2.values():
        c2[_norm_key(s)] = c2.get(_norm_key(s), 0) + 1
    if c1 != c2:
        return None

    form = _IntegerForm(L2.field_gram)
    norms2 = N2.values()
    cand = []
    for i in range(n):
        idx = [k for k, s in enumerate(norms2) if s == diag[i]]
        C = V2[idx]
        if i == 0:
            # -1 is always an automorphism: fix the sign of the first image
            keep = [k for k in range(len(C)) if _first_nonzero_positive(C[k])]
            C = C[keep]
        cand.append(C)
    targets = [[form.target(G1r[i][j]) for j in range(n)] for i in range(n)]

    # int64 dot products are exact when |c . (A y)| stays below 2^62
    cmax = max((int(np.abs(C).max()) for C in cand if len(C)), default=0)
    amax = max(int(np.abs(form.A).max()), int(np.abs(form.B).max()), 1)
    dtype = np.int64 if n * cmax * n * amax * cmax < 2**62 else object
    cand = [C.astype(dtype) for C in cand]
    A = form.A.astype(dtype)
    B = form.B.astype(dtype)

    steps = 0
    chosen = []
    # pools[i][l]: indices into cand[l] still consistent after choosing rows 0..i-1
    pools = [[np.arange(len(C)) for C in cand]]
    pos = [0] * n

    def narrow(i, y, current):
        """Forward check: restrict every later level by the inner product with ``y``."""
        Ay, By = A.dot(y), B.dot(y)
        out = list(current)
        for l in range(i + 1, n):
            C = cand[l][current[l]]
            ta, tb = targets[l][i]
            ok = C.dot(Ay) == ta
            if form.has_rad:
                ok &= C.dot(By) == tb
            out[l] = current[l][ok]
            if len(out[l]) == 0:
                return None
        return out

    i = 0
    while True:
        level = pools[i][i]
        if pos[i] >= len(level):
            if i == 0:
                return None
            i -= 1
            chosen.pop()
            pools.pop()
            pos[i] += 1
            continue
        steps += 1
        if steps > budget:
            raise ResourceError("isometry search budget exceeded", budget=budget, used=steps)
        y = cand[i][level[pos[i]]]
        if i == n - 1:
            Y = np.array([[int(v) for v in r] for r in chosen + [y]], dtype=object)
            U = _compose(R, Y)
            if _check(U, L1, L2):
                return U
            pos[i] += 1
            continue
        nxt = narrow(i, y, pools[i])
        if nxt is None:
            pos[i] += 1
            continue
        chosen.append(y)
        pools.append(nxt)
        i += 1
        pos[i] = 0


def _first_nonzero_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _compose(R, Y):
    # U G2 U^T = G1 with U = R^{-1} Y, since Y G2 Y^T = R G1 R^T
    Rinv = linalg.inverse([[Fraction(int(x)) for x in r] for r in R])
    U = linalg.matmul(Rinv, [[Fraction(int(x)) for x in r] for r in Y])
    if any(x.denominator != 1 for r in U for x in r):
        raise AssertionError("reduction transform is not unimodular")
    return np.array([[int(x) for x in r] for r in U], dtype=np.int64)


def _check(U, L1: Lattice, L2: Lattice) -> bool:
    G = linalg.congruence(U.tolist(), L2.field_gram)
    return all(Scalar.coerce(G[i][j]) == Scalar.coerce(L1.field_gram[i][j])
               for i in range(L1.dim) for j in range(L1.dim))


def n_modular_check(L: Lattice, N: int, budget: int = DEFAULT_SEARCH_BUDGET,
                    max_nodes: int = DEFAULT_MAX_NODES) -> Optional[np.ndarray]:
    """``U`` with ``U (N G^{-1}) U^T = G`` if ``L`` is N-modular, else ``None``."""
    if int(N) != N or N < 1:
        raise PreconditionError("N must be a positive integer")
    if L.is_rational and not is_integral(L):
        raise PreconditionError("N-modularity is defined for integral lattices")
    rescaled = dual(L).scaled(N)
    return isometry_equivalent(L, rescaled, budget, max_nodes)


def _rational_root(q: Fraction, k: int) -> Optional[Fraction]:
    def iroot(m):
        if m < 0:
            return None
        r = round(m ** (1.0 / k)) if m else 0
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == m:
                return c
        return None
    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def isodual_check(L: Lattice, budget: int = DEFAULT_SEARCH_BUDGET,
                  max_nodes: int = DEFAULT_MAX_NODES) -> Optional[np.ndarray]:
    """``U`` with ``U (s G^{-1}) U^T = G`` where ``s = det^(2/n)`` (similar to its dual).

    The scale ``s`` must be rational, which covers determinant 1 (m.c.c.) and
    determinants that are rational perfect powers.
    """
    d = determinant(L)
    n = L.dim
    if not d.is_rational:
        raise RepresentationError("isodual check needs a rational determinant")
    s = _rational_root(d.to_fraction() ** 2, n)
    if s is None:
        raise RepresentationError("det^(2/n) is not rational")
    return isometry_equivalent(L, dual(L).scaled(s), budget, max_nodes)
