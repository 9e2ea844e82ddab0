"""Exact rational interval arithmetic.

Endpoints are Fractions, every operation rounds outward only in the sense of
taking min/max over endpoint combinations, so enclosures are exact: the true
value of an expression is always inside the computed interval.  Helpers at
the bottom convert to directed-rounded mpmath floats and to outward decimal
strings for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import InvalidParameters

Rat = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not isinstance(self.lo, Fraction):
            object.__setattr__(self, "lo", Fraction(self.lo))
        if not isinstance(self.hi, Fraction):
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidParameters(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rat) -> "RatInterval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other: "RatInterval") -> "RatInterval":
        ps = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(ps), max(ps))

    def scale(self, c: Rat) -> "RatInterval":
        if c >= 0:
            return RatInterval(self.lo * c, self.hi * c)
        return RatInterval(self.hi * c, self.lo * c)

    def shift(self, c: Rat) -> "RatInterval":
        return RatInterval(self.lo + c, self.hi + c)

    def abs_(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def certainly_lt(self, other: "RatInterval") -> bool:
        """True when every point of self is below every point of other."""
        return self.hi < other.lo

    def overlaps(self, other: "RatInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def strictly_inside(self, lo: Rat, hi: Rat) -> bool:
        return lo < self.lo and self.hi < hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def sqrt_upper(q: Fraction, bits: int = 96) -> Fraction:
    """A rational u with u >= sqrt(q), within about 2**-bits of it."""
    if q < 0:
        raise InvalidParameters("sqrt of a negative rational")
    if q == 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = (q.numerator * scale) // q.denominator + 1
    return Fraction(isqrt(n) + 1, 1 << bits)


def sqrt_lower(q: Fraction, bits: int = 96) -> Fraction:
    """A rational u with 0 <= u <= sqrt(q)."""
    if q <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = (q.numerator * scale) // q.denominator
    return Fraction(isqrt(n), 1 << bits)


def interval_sqrt(iv: RatInterval, bits: int = 96) -> RatInterval:
    if iv.lo < 0:
        raise InvalidParameters("sqrt of an interval reaching below 0")
    return RatInterval(sqrt_lower(iv.lo, bits), sqrt_upper(iv.hi, bits))


# -- decimal rendering -------------------------------------------------------


def decimal_lower(q: Fraction, digits: int) -> str:
    """Decimal string <= q with the given number of fractional digits."""
    scaled = q * 10**digits
    n = scaled.numerator // scaled.denominator  # floor
    return _decimal_from_scaled(n, digits)


def decimal_upper(q: Fraction, digits: int) -> str:
    """Decimal string >= q with the given number of fractional digits."""
    scaled = q * 10**digits
    n = -((-scaled.numerator) // scaled.denominator)  # ceil
    return _decimal_from_scaled(n, digits)


def _decimal_from_scaled(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


# -- mpmath bridges ----------------------------------------------------------


def fraction_to_mpf(q: Rat, prec: int, direction: str):
    """Directed conversion of a rational to an mpmath mpf.

    direction 'floor' gives a value <= q, 'ceiling' a value >= q.
    """
    from mpmath import libmp, make_mpf

    q = Fraction(q)
    rnd = libmp.round_floor if direction == "floor" else libmp.round_ceiling
    return make_mpf(libmp.from_rational(q.numerator, q.denominator, prec, rnd))


def interval_to_iv(iv: RatInterval, prec: int):
    """Outward conversion of a RatInterval to an mpmath iv.mpf at ``prec``."""
    import mpmath

    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        lo = fraction_to_mpf(iv.lo, prec, "floor")
        hi = fraction_to_mpf(iv.hi, prec, "ceiling")
        return mpmath.iv.mpf([lo, hi])
    finally:
        mpmath.iv.prec = old


def iv_to_interval(x) -> RatInterval:
    """Exact rational endpoints of an mpmath iv.mpf (finite mpf values are
    dyadic, so this direction never rounds).

    Reads the raw endpoint tuples; going through ``mpf(x.a)`` would re-round
    the endpoints in the *global* real context and can collapse a tight
    interval to a point.
    """
    a, b = x._mpi_
    return RatInterval(_mpf_tuple_to_fraction(a), _mpf_tuple_to_fraction(b))


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    man = int(man)  # may be a gmpy2 mpz
    if man == 0 and exp != 0:
        raise InvalidParameters("non-finite mpf endpoint")
    val = -man if sign else man
    if exp >= 0:
        return Fraction(val << exp)
    return Fraction(val, 1 << (-exp))
