"""Closed rational intervals for rigorous enclosure arithmetic.

Endpoints are exact ``Fraction`` values (dyadic in practice, since they
come from bisection).  Operations return intervals guaranteed to contain
every possible value, so any sign decided here is certain.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction


@dataclasses.dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        assert self.lo <= self.hi

    @classmethod
    def exact(cls, v) -> "Interval":
        f = Fraction(v)
        return cls(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        ps = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def scaled(self, c: Fraction) -> "Interval":
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def __pow__(self, n: int) -> "Interval":
        assert n >= 0
        if n == 0:
            return Interval.exact(1)
        if n % 2 == 0 and self.lo < 0 < self.hi:
            m = max(-self.lo, self.hi)
            return Interval(Fraction(0), m ** n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def sign(self) -> int | None:
        """-1, 0 or 1 when certain; None when the interval straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def contains(self, v: Fraction) -> bool:
        return self.lo <= v <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0


def _coerce(v) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, (int, Fraction)):
        return Interval.exact(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Interval")


def eval_poly(coeffs, t: Interval) -> Interval:
    """Enclose p(t) for p given by (rational) coefficients, lowest first."""
    acc = Interval.exact(0)
    for c in reversed(list(coeffs)):
        acc = acc * t + Interval.exact(c)
    return acc
