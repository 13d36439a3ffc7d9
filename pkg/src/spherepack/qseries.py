"""Truncated q-series with quarter-integer exponents and rational coefficients."""
from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Mapping


def _q4(e) -> Fraction:
    e = Fraction(e)
    if 4 % e.denominator:
        raise ValueError(f"exponent {e} does not lie in (1/4)Z")
    return e


class QSeries:
    """``sum c_e q^e`` known exactly for every exponent ``e < cutoff``.

    Coefficients that are zero are not stored.  Arithmetic truncates at the
    smaller cutoff of the operands (for products, the cutoff is shifted by the
    lowest exponent present on the other side).
    """

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms: Mapping = (), cutoff=0):
        cutoff = Fraction(cutoff)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for e, c in items:
            e, c = _q4(e), Fraction(c)
            if e < cutoff and c:
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})
        object.__setattr__(self, "cutoff", cutoff)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def one(cls, cutoff):
        return cls({0: 1}, cutoff)

    def __getitem__(self, e) -> Fraction:
        e = Fraction(e)
        if e >= self.cutoff:
            raise KeyError(f"coefficient of q^{e} unknown (cutoff {self.cutoff})")
        return self.terms.get(e, Fraction(0))

    def coefficient(self, e) -> Fraction:
        return self[e]

    def items(self):
        return self.terms.items()

    def exponents(self):
        return list(self.terms)

    def valuation(self):
        return min(self.terms) if self.terms else None

    def truncate(self, cutoff) -> "QSeries":
        return QSeries(self.terms, min(Fraction(cutoff), self.cutoff))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.terms == other.terms

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality of the coefficients both series know."""
        c = min(self.cutoff, other.cutoff)
        return self.truncate(c).terms == other.truncate(c).terms

    def __hash__(self):
        return hash((self.cutoff, tuple(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        cut = min(self.cutoff, other.cutoff)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return QSeries(terms, cut)

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "QSeries":
        k = Fraction(k)
        return QSeries({e: k * c for e, c in self.terms.items()}, self.cutoff)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        va, vb = self.valuation(), other.valuation()
        if va is None or vb is None:
            cut = min(self.cutoff + (vb or 0), other.cutoff + (va or 0))
            return QSeries({}, cut)
        cut = min(self.cutoff + vb, other.cutoff + va)
        terms: dict = {}
        for ea, ca in self.terms.items():
            if ea + vb >= cut:
                break
            for eb, cb in other.terms.items():
                e = ea + eb
                if e >= cut:
                    break
                terms[e] = terms.get(e, 0) + ca * cb
        return QSeries(terms, cut)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = QSeries.one(self.cutoff if self.valuation() == 0 else self.cutoff * k)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def evaluate(self, z: complex) -> complex:
        """Numerical value at ``q = exp(pi i z)`` summing the known terms."""
        return sum(complex(c) * cmath.exp(1j * cmath.pi * z * float(e))
                   for e, c in self.terms.items())

    def __repr__(self):
        body = " + ".join(f"{c}*q^{e}" for e, c in self.terms.items()) or "0"
        return f"QSeries({body} + O(q^{self.cutoff}))"
