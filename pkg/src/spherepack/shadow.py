"""Shadows of unimodular lattices, theta-series ring expressions and extremal bounds.

Conventions: ``q = exp(pi i z)``, so a vector of norm ``m`` contributes
``q^m``.  For an odd unimodular lattice the theta series is a polynomial in
``Theta_Z`` and ``Theta_E8`` (monomials ``Theta_Z^(n-8j) Theta_E8^j``); for an
even one it is a polynomial in ``Theta_E8`` and ``Theta_Leech``.  Replacing
``Theta_Z`` by the theta series of its shadow ``Z + 1/2`` gives the shadow
series of the lattice.
"""
from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .enumeration import DEFAULT_MAX_NODES
from .errors import PreconditionError, PrecisionError, ThetaSystemError
from .lattice import (
    Lattice,
    determinant,
    is_even,
    is_integral,
    is_unimodular,
    min_norm,
    minimal_vectors,
    theta_series,
)
from .qseries import QSeries
from .scalar import Scalar


# -- reference series --------------------------------------------------------

def theta_z(cutoff) -> QSeries:
    """``sum_{m in Z} q^(m^2)``."""
    cutoff = Fraction(cutoff)
    terms = {0: 1}
    m = 1
    while m * m < cutoff:
        terms[m * m] = 2
        m += 1
    return QSeries(terms, cutoff)


def theta_shadow_z(cutoff) -> QSeries:
    """Theta series of ``Z + 1/2``: ``sum_m q^((2m+1)^2/4)``."""
    cutoff = Fraction(cutoff)
    terms = {}
    m = 0
    while Fraction((2 * m + 1) ** 2, 4) < cutoff:
        terms[Fraction((2 * m + 1) ** 2, 4)] = 2
        m += 1
    return QSeries(terms, cutoff)


class _ReferenceCache:
    """Theta series of catalog lattices, computed once per cutoff and then reused."""

    def __init__(self):
        self._lock = threading.Lock()
        self._series = {}

    def get(self, name: str, cutoff) -> QSeries:
        cutoff = Fraction(cutoff)
        with self._lock:
            have = self._series.get(name)
            if have is None or have.cutoff < cutoff:
                from .catalog import get as catalog_get
                have = theta_series(catalog_get(name), cutoff)
                self._series[name] = have
            return have.truncate(cutoff)


_REFERENCE = _ReferenceCache()


def theta_e8(cutoff) -> QSeries:
    return _REFERENCE.get("E8", cutoff)


def theta_leech(cutoff) -> QSeries:
    return _REFERENCE.get("Leech", cutoff)


# -- even sublattice and shadow ----------------------------------------------

@dataclass(frozen=True)
class EvenSublattice:
    lattice: Lattice
    transform: np.ndarray  # rows: basis of the sublattice in parent coordinates
    identity: bool  # True when the parent was already even


def _require_integral(L: Lattice):
    if not L.is_rational or not is_integral(L):
        raise PreconditionError("needs an integral lattice")


def even_sublattice(L: Lattice) -> EvenSublattice:
    """Vectors of even norm: the kernel of ``x -> x.x mod 2``."""
    _require_integral(L)
    G = L.field_gram
    n = L.dim
    odd = [i for i in range(n) if G[i][i] % 2]
    if not odd:
        return EvenSublattice(L, np.eye(n, dtype=np.int64), True)
    i0 = odd[0]
    T = []
    for j in range(n):
        row = [0] * n
        if j == i0:
            row[i0] = 2
        else:
            row[j] = 1
            if G[j][j] % 2:
                row[i0] = 1
        T.append(row)
    G0 = linalg.congruence(T, G)
    U, _ = linalg.lll_gram(G0)
    T = (U @ np.array(T, dtype=np.int64))
    name = f"{L.name}_0" if L.name else None
    return EvenSublattice(Lattice(linalg.congruence(T.tolist(), G), name=name), T, False)


def characteristic_vector(L: Lattice) -> tuple:
    """Integer coordinates of a vector ``u`` with ``u.x = x.x (mod 2)`` for all ``x``."""
    _require_integral(L)
    G = L.field_gram
    n = L.dim
    A = np.array([[int(G[i][j]) % 2 for j in range(n)] for i in range(n)], dtype=np.uint8)
    b = np.array([int(G[i][i]) % 2 for i in range(n)], dtype=np.uint8)
    x = _solve_gf2(A, b)
    if x is None:
        raise PreconditionError("Gram matrix is singular mod 2 (not unimodular)")
    return tuple(int(v) for v in x)


def _solve_gf2(A, b):
    n = A.shape[0]
    M = np.hstack([A, b[:, None]]).astype(np.uint8)
    row = 0
    piv = []
    for c in range(n):
        p = next((r for r in range(row, n) if M[r, c]), None)
        if p is None:
            return None
        M[[row, p]] = M[[p, row]]
        for r in range(n):
            if r != row and M[r, c]:
                M[r] ^= M[row]
        piv.append(c)
        row += 1
    return M[:, n]


def is_parity_vector(L: Lattice, u, samples: Sequence) -> bool:
    """``u.x = x.x (mod 2)`` for every sample ``x`` (integer coordinates)."""
    for x in samples:
        x = [int(v) for v in x]
        if (L.inner(u, x).to_fraction() - L.norm(x).to_fraction()) % 2:
            return False
    return True


@dataclass(frozen=True)
class ShadowDescription:
    parent: Lattice
    coset_rep: tuple  # lattice coordinates; the shadow is parent + coset_rep
    series: QSeries

    @property
    def parity_vector(self) -> tuple:
        return tuple(int(2 * c) for c in self.coset_rep)


def shadow(L: Lattice, cutoff=8, max_nodes=DEFAULT_MAX_NODES) -> ShadowDescription:
    """Shadow ``S(L) = (L_0)^* minus L``, as the coset ``L + u/2`` with ``u`` characteristic."""
    if not L.is_rational or not is_unimodular(L):
        raise PreconditionError("shadow needs a unimodular lattice")
    cutoff = Fraction(cutoff)
    if is_even(L):
        return ShadowDescription(L, tuple([Fraction(0)] * L.dim), theta_series(L, cutoff, max_nodes))
    u = characteristic_vector(L)
    rep = tuple(Fraction(v, 2) for v in u)
    hist = L.enumerator.norm_histogram(cutoff, center=[-r for r in rep], max_nodes=max_nodes)
    return ShadowDescription(L, rep, QSeries(hist, cutoff))


# -- transformation law, numerically --------------------------------------

def _eval(series: QSeries, z: complex) -> complex:
    return series.evaluate(z)


def _gaussian_tail(n, det, cutoff, absq) -> float:
    """Rough size of ``sum_{norm >= cutoff} |q|^norm`` from lattice-point counts."""
    vn = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    total = 0.0
    t = float(cutoff)
    for _ in range(10_000):
        shell = vn * ((t + 1) ** (n / 2)) / math.sqrt(det)
        term = shell * absq ** t
        total += term
        if term < 1e-40 or t > 10 * cutoff + 100:
            break
        t += 1
    return total


def _extended_cutoff(n, det, cutoff, absq, target) -> Fraction:
    c = Fraction(cutoff)
    while _gaussian_tail(n, det, c, absq) > target * 1e-3:
        c += 4
        if c > 400:
            break
    return c


def shadow_transform_check(L: Lattice, z_samples, cutoff=12, target=1e-9,
                           max_nodes=DEFAULT_MAX_NODES) -> float:
    """Max of ``|Theta_S(z) - (e^(pi i/4)/sqrt z)^n Theta_L(1 - 1/z)|`` over the samples.

    Both sides are sums of series truncated at ``cutoff``.  Their truncation
    error is measured against longer series; if it exceeds ``target`` the
    cutoff is too small and :class:`PrecisionError` is raised.
    """
    cutoff = Fraction(cutoff)
    if cutoff < 8:
        raise PreconditionError("cutoff must be at least 8")
    n = L.dim
    det = float(determinant(L))
    zs = [complex(z) for z in z_samples]
    if any(z.imag < 1 for z in zs):
        raise PreconditionError("samples need Im z >= 1")
    th = theta_series(L, cutoff, max_nodes)
    sh = shadow(L, cutoff, max_nodes).series
    worst = 0.0
    for z in zs:
        tau = 1 - 1 / z
        pref = (cmath.exp(1j * cmath.pi / 4) / cmath.sqrt(z)) ** n
        lhs = _eval(sh, z)
        rhs = pref * _eval(th, tau)
        # truncation error, measured with longer series
        absq_t = math.exp(-math.pi * tau.imag)
        absq_s = math.exp(-math.pi * z.imag)
        ct = _extended_cutoff(n, det, cutoff, absq_t, target)
        cs = _extended_cutoff(n, det, cutoff, absq_s, target)
        err = 0.0
        if ct > cutoff:
            err = max(err, abs(pref) * abs(_eval(theta_series(L, ct, max_nodes), tau)
                                           - _eval(th, tau)))
        if cs > cutoff:
            err = max(err, abs(_eval(shadow(L, cs, max_nodes).series, z) - lhs))
        if err > target:
            raise PrecisionError(
                f"series cutoff {cutoff} leaves truncation error {err:.3g} at z={z}")
        worst = max(worst, abs(lhs - rhs))
    return worst


# -- ring expressions ------------------------------------------------------------

@dataclass(frozen=True)
class RingExpression:
    """``sum_j coeffs[j] * basis_j`` in dimension ``n``.

    Odd: ``basis_j = Theta_Z^(n-8j) Theta_E8^j`` for ``0 <= j <= n//8``.
    Even: ``basis_j = Theta_E8^((n-24j)/8) Theta_Leech^j`` for ``0 <= j <= n//24``.
    """

    n: int
    coeffs: tuple
    even: bool = False


def _basis(n: int, even: bool, cutoff) -> list:
    cutoff = Fraction(cutoff)
    if even:
        if n % 8:
            raise PreconditionError("even unimodular lattices need n divisible by 8")
        e8, lee = theta_e8(cutoff), theta_leech(cutoff) if n >= 24 else None
        return [(e8 ** ((n - 24 * j) // 8)) * (lee ** j if j else QSeries.one(cutoff))
                for j in range(n // 24 + 1)]
    tz, e8 = theta_z(cutoff), theta_e8(cutoff)
    return [(tz ** (n - 8 * j)) * (e8 ** j) for j in range(n // 8 + 1)]


def _equation_exponents(n: int, even: bool) -> list:
    if even:
        return [Fraction(2 * j) for j in range(n // 24 + 1)]
    return [Fraction(j) for j in range(n // 8 + 1)]


def express_theta_unimodular(prefix: QSeries, n: int, even: bool = False) -> RingExpression:
    """Coefficients of a unimodular theta series in the ring basis, from its first terms.

    Needs the coefficients of ``q^0..q^(n//8)`` (odd) or ``q^0, q^2, ..,
    q^(2 (n//24))`` (even).  Any further coefficients the prefix knows are
    checked against the solution; a mismatch raises :class:`ThetaSystemError`.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    eqs = _equation_exponents(n, even)
    if prefix.cutoff <= eqs[-1]:
        raise PreconditionError(f"prefix must be known through q^{eqs[-1]}")
    basis = _basis(n, even, prefix.cutoff)
    M = [[b[e] for b in basis] for e in eqs]
    rhs = [prefix[e] for e in eqs]
    try:
        coeffs = linalg.solve(M, rhs)
    except ZeroDivisionError as exc:  # pragma: no cover - the basis is independent
        raise ThetaSystemError("ring system is singular") from exc
    expr = RingExpression(n, tuple(Fraction(c) for c in coeffs), even)
    recon = reconstruct(expr, prefix.cutoff)
    if not recon.agrees_with(prefix):
        raise ThetaSystemError("not a unimodular theta prefix")
    return expr


def reconstruct(expr: RingExpression, cutoff) -> QSeries:
    basis = _basis(expr.n, expr.even, cutoff)
    out = QSeries({}, Fraction(cutoff))
    for a, b in zip(expr.coeffs, basis):
        out = out + b.scale(a)
    return out


def shadow_theta_from_ring(expr: RingExpression, cutoff) -> QSeries:
    """Shadow series: substitute ``Theta_Z -> Theta_(Z+1/2)`` in an odd expression."""
    cutoff = Fraction(cutoff)
    if expr.even:
        return reconstruct(expr, cutoff)
    n = expr.n
    # Theta_S(Z)^k has valuation k/4, so a slightly longer input keeps every term exact
    sz = theta_shadow_z(cutoff)
    e8 = theta_e8(cutoff)
    out = QSeries({}, cutoff)
    for j, a in enumerate(expr.coeffs):
        k = n - 8 * j
        term = (sz ** k) * (e8 ** j) if k else e8 ** j
        out = out + term.truncate(cutoff).scale(a)
    return out.truncate(cutoff)


# -- nonexistence ------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    verdict: str  # "impossible" | "inconclusive"
    n: int
    mu: int
    free_parameters: int = 0
    expression: Optional[RingExpression] = None
    evidence: Optional[QSeries] = None
    evidence_kind: Optional[str] = None  # "theta" | "shadow" | "system"
    offending: Optional[tuple] = None  # (exponent, coefficient)


def _first_bad(series: QSeries):
    for e, c in series.items():
        if c < 0 or c.denominator != 1:
            return e, c
    return None


def nonexistence_certificate(n: int, mu: int, cutoff=None) -> Certificate:
    """Can an odd unimodular n-dimensional lattice have minimal norm at least ``mu``?

    Forces ``Theta = 1 + 0 q + .. + 0 q^(mu-1)``, solves for the ring
    expression and inspects theta and shadow series below ``cutoff``.
    Verdict "impossible" when a coefficient is negative or fractional (or
    the forced prefix is inconsistent); otherwise "inconclusive".
    """
    if not 1 <= n <= 48:
        raise PreconditionError("n must lie in 1..48")
    if mu < 1:
        raise PreconditionError("mu must be at least 1")
    unknowns = n // 8 + 1
    if mu < unknowns:
        return Certificate("inconclusive", n, mu, free_parameters=unknowns - mu)
    cutoff = Fraction(cutoff if cutoff is not None else max(mu + 4, n // 4 + 8))
    prefix = QSeries({0: 1}, Fraction(mu))
    try:
        expr = express_theta_unimodular(prefix, n, even=False)
    except ThetaSystemError:
        return Certificate("impossible", n, mu, evidence=prefix, evidence_kind="system")
    theta = reconstruct(expr, cutoff)
    bad = _first_bad(theta)
    if bad:
        return Certificate("impossible", n, mu, expression=expr, evidence=theta,
                           evidence_kind="theta", offending=bad)
    sh = shadow_theta_from_ring(expr, cutoff)
    bad = _first_bad(sh)
    if bad:
        return Certificate("impossible", n, mu, expression=expr, evidence=sh,
                           evidence_kind="shadow", offending=bad)
    return Certificate("inconclusive", n, mu, expression=expr, evidence=sh,
                       evidence_kind="shadow")


# -- bounds ---------------------------------------------------------------------

def legacy_bound(n: int) -> int:
    """Older bound for unimodular lattices: ``mu <= floor(n/8) + 1``."""
    return n // 8 + 1


def extremal_bound(n: int, kind: str = "odd") -> int:
    """``mu <= 2 floor(n/24) + 2`` (even and odd unimodular), except ``mu <= 3`` for odd n = 23."""
    if kind not in ("odd", "even"):
        raise ValueError("kind must be 'odd' or 'even'")
    if kind == "odd" and n == 23:
        # exception stated alongside the odd bound (shorter Leech lattice, mu = 3)
        return 3
    return 2 * (n // 24) + 2


def is_extremal(L: Lattice, max_nodes=DEFAULT_MAX_NODES) -> bool:
    if not L.is_rational or not is_unimodular(L):
        raise PreconditionError("extremality is defined for integral unimodular lattices")
    kind = "even" if is_even(L) else "odd"
    bound = extremal_bound(L.dim, kind)
    # integral norms: nothing of norm bound - 1 or less, and a basis vector at the bound
    if len(minimal_vectors(L, bound - 1, max_nodes)):
        return False
    reduced = L.enumerator._reduced[0]
    if any(L.norm([int(x) for x in row]) == bound for row in reduced):
        return True
    return min_norm(L, max_nodes) == bound
