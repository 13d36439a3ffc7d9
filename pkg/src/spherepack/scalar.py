"""Exact arithmetic in the real quadratic field Q(sqrt 2).

A :class:`Scalar` is ``rat + rad * sqrt(2)`` with both parts stored as
:class:`fractions.Fraction`.  Comparison is exact: the sign of
``a + b*sqrt2`` is decided from the signs of ``a`` and ``b`` and, when
they disagree, by comparing ``a**2`` with ``2*b**2``.
"""
from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

from .errors import RepresentationError

SQRT2 = 1.4142135623730950488


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _sign(a: Fraction, b: Fraction) -> int:
    # sign of a + b*sqrt(2)
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 with 2 b^2
    if a * a > 2 * b * b:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


class Scalar:
    """Element ``rat + rad*sqrt(2)`` of Q(sqrt 2).  Immutable and hashable."""

    __slots__ = ("rat", "rad")

    def __init__(self, rat=0, rad=0):
        object.__setattr__(self, "rat", _frac(rat))
        object.__setattr__(self, "rad", _frac(rad))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return cls(_frac(x), 0)

    @property
    def is_rational(self) -> bool:
        return self.rad == 0

    def to_fraction(self) -> Fraction:
        if self.rad != 0:
            raise RepresentationError(f"{self} is irrational")
        return self.rat

    def conjugate(self) -> "Scalar":
        """Galois conjugate ``rat - rad*sqrt(2)``."""
        return Scalar(self.rat, -self.rad)

    def field_norm(self) -> Fraction:
        return self.rat * self.rat - 2 * self.rad * self.rad

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.rat + o.rat, self.rad + o.rad)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.rat, -self.rad)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.rat - o.rat, self.rad - o.rad)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if o.rad == 0:
            return Scalar(self.rat * o.rat, self.rad * o.rat)
        return Scalar(self.rat * o.rat + 2 * self.rad * o.rad,
                      self.rat * o.rad + self.rad * o.rat)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.field_norm()
        if n == 0:
            # the norm vanishes only at zero since sqrt(2) is irrational
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return Scalar(self.rat / n, -self.rad / n)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if o.rad == 0:
            if o.rat == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt 2)")
            return Scalar(self.rat / o.rat, self.rad / o.rat)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Scalar(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        return _sign(self.rat, self.rad)

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.rat == o.rat and self.rad == o.rad

    def __hash__(self):
        if self.rad == 0:
            return hash(self.rat)
        return hash((self.rat, self.rad))

    def _cmp(self, other) -> int:
        o = Scalar.coerce(other)
        return _sign(self.rat - o.rat, self.rad - o.rad)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.rat) or bool(self.rad)

    def __float__(self):
        if self.rad == 0:
            return float(self.rat)
        # avoid cancellation: evaluate with 40 significant digits
        with localcontext() as ctx:
            ctx.prec = 40
            r = Decimal(self.rat.numerator) / Decimal(self.rat.denominator)
            s = Decimal(self.rad.numerator) / Decimal(self.rad.denominator)
            return float(r + s * Decimal(2).sqrt())

    def sqrt(self) -> "Scalar":
        """Exact square root inside Q(sqrt 2); raises if there is none."""
        if self.sign() < 0:
            raise RepresentationError(f"sqrt of negative {self}")
        if self.rad == 0:
            r = _rational_sqrt(self.rat)
            if r is not None:
                return Scalar(r)
            r = _rational_sqrt(self.rat / 2)
            if r is not None:
                return Scalar(0, r)
            raise RepresentationError(f"sqrt({self}) is not in Q(sqrt 2)")
        # (x + y sqrt2)^2 = x^2 + 2y^2 + 2xy sqrt2
        n = _rational_sqrt(self.field_norm())
        if n is not None:
            for x2 in ((self.rat + n) / 2, (self.rat - n) / 2):
                x = _rational_sqrt(x2)
                if x is None or x == 0:
                    continue
                y = self.rad / (2 * x)
                cand = Scalar(x, y)
                if cand * cand == self:
                    return cand if cand.sign() > 0 else -cand
        raise RepresentationError(f"sqrt({self}) is not in Q(sqrt 2)")

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def format_scalar(s) -> str:
    """Exact string ``p/q`` or ``p/q+r/s*sqrt2``."""
    s = Scalar.coerce(s)
    if s.rad == 0:
        return format_fraction(s.rat)
    rad = format_fraction(s.rad)
    if s.rat == 0:
        return f"{rad}*sqrt2"
    sep = "" if s.rad < 0 else "+"
    return f"{format_fraction(s.rat)}{sep}{rad}*sqrt2"


_SCALAR_RE = re.compile(
    r"^\s*(?:(?P<rat>[+-]?\d+(?:/\d+)?)(?![\d/]|\s*\*))?\s*"
    r"(?:(?P<rad>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*sqrt\(?2\)?)?\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"r/s*sqrt2"`` or ``"p/q+r/s*sqrt2"``."""
    try:
        return _parse_scalar(text)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def _parse_scalar(text: str) -> Scalar:
    m = _SCALAR_RE.match(text)
    if not m or (m.group("rat") is None and m.group("rad") is None):
        raise ValueError(f"malformed exact scalar {text!r}")
    rat = Fraction(m.group("rat")) if m.group("rat") else Fraction(0)
    rad_txt = m.group("rad")
    if rad_txt is None:
        return Scalar(rat)
    rad_txt = rad_txt.replace(" ", "")
    if rad_txt in ("", "+"):
        rad = Fraction(1)
    elif rad_txt == "-":
        rad = Fraction(-1)
    else:
        rad = Fraction(rad_txt)
    return Scalar(rat, rad)


SQRT2_SCALAR = Scalar(0, 1)
