"""Fincke-Pohst enumeration of lattice vectors under an exact Gram form.

The tree walk runs in floating point (compiled with numba) against an
LLL-reduced copy of the form, with the bound inflated by a relative slack of
2**-40 so rounding cannot drop a vector.  Every candidate returned by the walk
is then re-checked with exact integer arithmetic; the float norms are only
ever used for pruning.

In histogram mode (theta series) the exact check is done differently: the
caller supplies a scale making every norm an integer, the walk rounds each
scaled norm to the nearest integer and reports the worst rounding distance,
and the wrapper refuses the result unless that distance is below 1/4.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numba
import numpy as np

from .errors import PrecisionError, ResourceError
from .linalg import common_denominator, congruence, lll_gram, to_field_matrix
from .scalar import Scalar

DEFAULT_MAX_NODES = 10**9
SLACK = 2.0**-40

_MODE_COUNT, _MODE_FILL, _MODE_HIST, _MODE_MIN = 0, 1, 2, 3


@numba.njit(cache=True)
def _walk(B, L, center, bound, mode, max_nodes, out, scale, hist, half=False):
    # half: visit one of each pair +-x (center must be zero); counts are
    # weighted so that results equal the full walk
    n = B.shape[0]
    x = np.zeros(n, dtype=np.int64)
    ctr = np.zeros(n)
    hi = np.zeros(n, dtype=np.int64)
    part = np.zeros(n + 1)
    nz = np.zeros(n + 1, dtype=np.bool_)  # nz[i]: some x[j] != 0 with j >= i
    count = 0
    nodes = 0
    status = 0
    max_err = 0.0
    if mode == 3:
        max_err = np.inf

    i = n - 1
    ctr[i] = center[i]
    rem = bound
    r = np.sqrt(max(rem, 0.0) / B[i])
    x[i] = np.int64(np.ceil(ctr[i] - r)) - 1
    if half and x[i] < -1:
        x[i] = -1
    hi[i] = np.int64(np.floor(ctr[i] + r))
    while True:
        x[i] += 1
        if x[i] > hi[i]:
            i += 1
            if i == n:
                break
            continue
        nodes += 1
        if nodes > max_nodes:
            status = 1
            break
        d = x[i] - ctr[i]
        p = part[i + 1] + B[i] * d * d
        if p > bound:
            continue
        if i == 0:
            w = 1
            if half and (nz[1] or x[0] != 0):
                w = 2
            if mode == 0:
                count += w
            elif mode == 3:
                if p < max_err:
                    max_err = p
                count += 1
            elif mode == 1:
                if count < out.shape[0]:
                    for k in range(n):
                        out[count, k] = x[k]
                count += 1
            else:
                v = p * scale
                k = np.int64(np.rint(v))
                e = abs(v - k)
                if e > max_err:
                    max_err = e
                if k < hist.shape[0]:
                    hist[k] += w
                count += w
            continue
        part[i] = p
        nz[i] = nz[i + 1] or x[i] != 0
        i -= 1
        c = center[i]
        for j in range(i + 1, n):
            c -= L[j, i] * (x[j] - center[j])
        ctr[i] = c
        rem = bound - p
        r = np.sqrt(max(rem, 0.0) / B[i])
        x[i] = np.int64(np.ceil(c - r)) - 1
        if half and not nz[i + 1] and x[i] < -1:
            x[i] = -1
        hi[i] = np.int64(np.floor(c + r))
    return count, nodes, status, max_err


@numba.njit(cache=True)
def _walk_min_batch(B, L, centers, bound, max_nodes):
    # smallest float norm (x - c) G (x - c)^T per center, inf if none <= bound
    k = centers.shape[0]
    mins = np.full(k, np.inf)
    out = np.zeros((0, B.shape[0]), dtype=np.int64)
    hist = np.zeros(0, dtype=np.int64)
    used = 0
    for t in range(k):
        count, nodes, status, m = _walk(B, L, centers[t], bound, 3, max_nodes - used,
                                        out, 1.0, hist)
        used += nodes
        if status:
            return mins, used, 1
        mins[t] = m
    return mins, used, 0


class NodeBudget:
    """Node allowance shared by several enumeration calls."""

    def __init__(self, max_nodes: int = DEFAULT_MAX_NODES):
        self.max_nodes = int(max_nodes)
        self.used = 0

    @property
    def remaining(self) -> int:
        return max(self.max_nodes - self.used, 0)

    def charge(self, nodes: int, exceeded: bool = False):
        self.used += int(nodes)
        if exceeded or self.used > self.max_nodes:
            raise ResourceError(
                f"enumeration node budget exceeded ({self.max_nodes} nodes)",
                budget=self.max_nodes, used=self.used)


def as_budget(max_nodes) -> NodeBudget:
    if isinstance(max_nodes, NodeBudget):
        return max_nodes
    return NodeBudget(DEFAULT_MAX_NODES if max_nodes is None else max_nodes)


class ExactNorms:
    """Exact norms of a batch of enumerated vectors.

    Rational forms store integer numerators over a common denominator;
    forms over Q(sqrt 2) store Scalars directly.
    """

    def __init__(self, num=None, den=1, scalars=None):
        self.num = num
        self.den = den
        self.scalars = scalars

    def __len__(self):
        return len(self.scalars) if self.scalars is not None else len(self.num)

    def values(self):
        if self.scalars is not None:
            return list(self.scalars)
        return [Scalar(Fraction(int(v), self.den)) for v in self.num]

    def le(self, bound) -> np.ndarray:
        bound = Scalar.coerce(bound)
        if self.scalars is not None:
            return np.array([s <= bound for s in self.scalars], dtype=bool)
        if bound.rad:
            return np.array([Scalar(Fraction(int(v), self.den)) <= bound for v in self.num],
                            dtype=bool)
        lim = bound.rat * self.den
        return np.array([v <= lim for v in self.num], dtype=bool) if self.num.dtype == object \
            else self.num <= _floor_int(lim)

    def eq(self, value) -> np.ndarray:
        value = Scalar.coerce(value)
        if self.scalars is not None:
            return np.array([s == value for s in self.scalars], dtype=bool)
        if value.rad:
            return np.zeros(len(self.num), dtype=bool)
        t = value.rat * self.den
        if t.denominator != 1:
            return np.zeros(len(self.num), dtype=bool)
        return self.num == int(t)

    def take(self, mask) -> "ExactNorms":
        if self.scalars is not None:
            idx = np.arange(len(self.scalars))[np.asarray(mask)]
            return ExactNorms(scalars=[self.scalars[i] for i in idx])
        return ExactNorms(num=self.num[mask], den=self.den)

    def min(self) -> Scalar:
        if self.scalars is not None:
            return min(self.scalars)
        return Scalar(Fraction(int(self.num.min()), self.den))


def _floor_int(q: Fraction) -> int:
    return q.numerator // q.denominator


class Enumerator:
    """Short-vector enumeration for one exact Gram matrix (built once, reused)."""

    def __init__(self, gram):
        self.gram = to_field_matrix(gram)
        self.n = len(self.gram)
        self.rational = not (self.n and isinstance(self.gram[0][0], Scalar))

    @cached_property
    def _reduced(self):
        U, Uinv = lll_gram(self.gram)
        Gred = congruence(U.tolist(), self.gram)
        Gf = np.array([[float(x) for x in row] for row in Gred])
        C = np.linalg.cholesky(Gf)
        d = np.diag(C)
        return U, Uinv, np.ascontiguousarray(d * d), np.ascontiguousarray(C / d)

    @cached_property
    def _integer_form(self):
        # gram = A/den (+ Bm/den * sqrt2)
        entries = [x for row in self.gram for x in row]
        if self.rational:
            den = common_denominator(entries)
            A = [[int(x * den) for x in row] for row in self.gram]
            return den, A, None
        den = common_denominator([e.rat for e in entries] + [e.rad for e in entries])
        A = [[int(x.rat * den) for x in row] for row in self.gram]
        Bm = [[int(x.rad * den) for x in row] for row in self.gram]
        return den, A, Bm

    def _float_center(self, center):
        U, Uinv, _, _ = self._reduced
        if center is None:
            return np.zeros(self.n)
        c = np.array([float(Fraction(v)) for v in center])
        # x = x' U  =>  x' = x Uinv
        return c @ Uinv.astype(float)

    def _run(self, bound_f, center_f, mode, max_nodes, out=None, scale=1.0, hist=None,
             half=False):
        _, _, B, L = self._reduced
        budget = as_budget(max_nodes)
        if out is None:
            out = np.zeros((0, self.n), dtype=np.int64)
        if hist is None:
            hist = np.zeros(0, dtype=np.int64)
        count, nodes, status, err = _walk(B, L, center_f, bound_f, mode, budget.remaining,
                                          out, scale, hist, half)
        budget.charge(nodes, bool(status))
        return count, nodes, err

    def count_candidates(self, bound, center=None, max_nodes=DEFAULT_MAX_NODES) -> int:
        bf = float(Scalar.coerce(bound)) * (1 + SLACK)
        return self._run(bf, self._float_center(center), _MODE_COUNT, max_nodes,
                         half=center is None)[0]

    def vectors(self, bound, center=None, max_nodes=DEFAULT_MAX_NODES):
        """All integer ``x`` with ``(x - c) G (x - c)^T <= bound`` (exact).

        Returns ``(V, norms)`` with ``V`` an int64 array sorted lexicographically
        and ``norms`` the matching :class:`ExactNorms`.
        """
        bound = Scalar.coerce(bound)
        budget = as_budget(max_nodes)
        U = self._reduced[0]
        bf = float(bound) * (1 + SLACK)
        cf = self._float_center(center)
        total, _, _ = self._run(bf, cf, _MODE_COUNT, budget)
        out = np.zeros((total, self.n), dtype=np.int64)
        self._run(bf, cf, _MODE_FILL, budget, out=out)
        V = out @ U
        norms = self.exact_norms(V, center)
        keep = norms.le(bound)
        V = V[keep]
        norms = norms.take(keep)
        if len(V):
            order = np.lexsort(V.T[::-1])
            V = V[order]
            norms = norms.take(order)
        return V, norms

    def exact_norms(self, V: np.ndarray, center=None) -> ExactNorms:
        den, A, Bm = self._integer_form
        e = 1
        if center is not None:
            cen = [Fraction(v) for v in center]
            e = common_denominator(cen)
            p = np.array([int(v * e) for v in cen], dtype=object)
            W = V.astype(object) * e - p if len(V) else np.zeros((0, self.n), dtype=object)
        else:
            W = V
        total_den = den * e * e
        num_a = _quad(W, A)
        if Bm is None:
            return ExactNorms(num=num_a, den=total_den)
        num_b = _quad(W, Bm)
        return ExactNorms(scalars=[Scalar(Fraction(int(a), total_den), Fraction(int(b), total_den))
                                   for a, b in zip(num_a, num_b)])

    def min_norms_batch(self, centers, bound, max_nodes=DEFAULT_MAX_NODES) -> np.ndarray:
        """Float minimum of ``(x - c) G (x - c)^T`` for each row ``c`` of ``centers``.

        Only a pruning aid: values are not exact.  Rows with no vector within
        ``bound`` get ``inf``.
        """
        Uinv = self._reduced[1]
        _, _, B, L = self._reduced
        budget = as_budget(max_nodes)
        C = np.ascontiguousarray(np.asarray(centers, dtype=float) @ Uinv.astype(float))
        bf = float(Scalar.coerce(bound)) * (1 + SLACK)
        mins, used, status = _walk_min_batch(B, L, C, bf, budget.remaining)
        budget.charge(used, bool(status))
        return mins

    def norm_histogram(self, cutoff, center=None, max_nodes=DEFAULT_MAX_NODES):
        """Counts of vectors by exact norm, for norms strictly below ``cutoff``.

        Requires a rational form.  Returns ``{norm: count}`` with Fraction keys.
        """
        if not self.rational:
            raise ValueError("norm histograms need a rational Gram matrix")
        cutoff = Fraction(cutoff)
        den, _, _ = self._integer_form
        e = 1
        if center is not None:
            e = common_denominator([Fraction(v) for v in center])
        scale = den * e * e
        # scaled norms are integers, so the largest one below the cutoff is the bound
        top = -_floor_int(-cutoff * scale) - 1
        if top < 0:
            return {}
        hist = np.zeros(top + 1, dtype=np.int64)
        bf = top / scale * (1 + SLACK)
        _, _, err = self._run(bf, self._float_center(center), _MODE_HIST, max_nodes,
                              scale=float(scale), hist=hist, half=center is None)
        if err > 0.25:
            raise PrecisionError(f"scaled norms drifted {err:.3g} from integers")
        result = {}
        for k in np.nonzero(hist)[0]:
            q = Fraction(int(k), scale)
            if q < cutoff:
                result[q] = int(hist[k])
        return result


def _quad(W, A):
    """Row-wise ``w A w^T`` with overflow-safe integer arithmetic."""
    if len(W) == 0:
        return np.zeros(0, dtype=np.int64)
    Aa = np.array(A, dtype=object)
    wmax = int(np.abs(W).max()) if W.dtype != object else max(abs(int(v)) for v in W.flat)
    amax = max(abs(int(v)) for v in Aa.flat) if Aa.size else 0
    n = Aa.shape[0]
    if wmax * wmax * amax * n * n < 2**62:
        Wi = W.astype(np.int64)
        Ai = Aa.astype(np.int64)
        return np.einsum("ij,ij->i", Wi @ Ai, Wi)
    Wo = W.astype(object)
    return np.array([sum(a * b for a, b in zip(row @ Aa, row)) for row in Wo], dtype=object)
