"""Certified interval arithmetic over dyadic rationals.

All numerical output of the library is an enclosure: a closed interval with
exact rational endpoints that provably contains the real value.  Endpoints
are kept dyadic (denominator a power of two) by rounding outward, so interval
widths shrink predictably with the requested bit count and serialized output
is compact and deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', an integer string, or a decimal string exactly."""
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(x: Rat) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def iroot_floor(a: int, n: int) -> int:
    """Largest r >= 0 with r**n <= a, for a >= 0, n >= 1."""
    if a < 0:
        raise ValueError("negative radicand")
    if n < 1:
        raise ValueError("root order must be positive")
    if a == 0:
        return 0
    if n == 1:
        return a
    x = 1 << -(-a.bit_length() // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > a:
        x -= 1
    while (x + 1) ** n <= a:
        x += 1
    return x


def iroot_ceil(a: int, n: int) -> int:
    """Smallest r >= 0 with r**n >= a, for a >= 0, n >= 1."""
    r = iroot_floor(a, n)
    return r if r ** n == a else r + 1


def dyadic_floor(x: Rat, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= x."""
    f = Fraction(x)
    scaled = f * (1 << bits)
    return Fraction(scaled.numerator // scaled.denominator, 1 << bits)


def dyadic_ceil(x: Rat, bits: int) -> Fraction:
    return -dyadic_floor(-Fraction(x), bits)


class DyadicInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Arithmetic is outward-safe: the result interval always contains every
    possible value of the operation applied to points of the operands.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, v: Rat) -> "DyadicInterval":
        v = Fraction(v)
        return cls(v, v)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v: Rat) -> bool:
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "DyadicInterval") -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return DyadicInterval(self.lo + other.lo, self.hi + other.hi)
        return DyadicInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "DyadicInterval":
        return self + (-other if isinstance(other, DyadicInterval) else DyadicInterval.point(-Fraction(other)))

    def __rsub__(self, other) -> "DyadicInterval":
        return DyadicInterval.point(other) - self

    def __mul__(self, other) -> "DyadicInterval":
        if not isinstance(other, DyadicInterval):
            other = DyadicInterval.point(other)
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def inverse(self) -> "DyadicInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return DyadicInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "DyadicInterval":
        if not isinstance(other, DyadicInterval):
            other = DyadicInterval.point(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "DyadicInterval":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return DyadicInterval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return DyadicInterval(self.lo ** n, self.hi ** n)
        if self.hi <= 0:
            return DyadicInterval(self.hi ** n, self.lo ** n)
        return DyadicInterval(0, max(self.lo ** n, self.hi ** n))

    def abs(self) -> "DyadicInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(0, max(-self.lo, self.hi))

    def square(self) -> "DyadicInterval":
        return self ** 2

    def union(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def max_with(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self) -> int | None:
        """-1, 0 (exact point zero), +1, or None when undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def round_outward(self, bits: int) -> "DyadicInterval":
        return DyadicInterval(dyadic_floor(self.lo, bits), dyadic_ceil(self.hi, bits))

    def nth_root(self, n: int, bits: int) -> "DyadicInterval":
        """Enclosure of the real n-th root of a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("root of an interval with negative points")
        lo_num = self.lo * (1 << (bits * n))
        lo = Fraction(iroot_floor(lo_num.numerator // lo_num.denominator, n), 1 << bits)
        hi_num = self.hi * (1 << (bits * n))
        hi_int = -((-hi_num.numerator) // hi_num.denominator)
        hi = Fraction(iroot_ceil(hi_int, n), 1 << bits)
        if hi < lo:
            hi = lo
        return DyadicInterval(lo, hi)


class ComplexBox:
    """Axis-aligned rectangle enclosing a complex value."""

    __slots__ = ("re", "im")

    def __init__(self, re: DyadicInterval, im: DyadicInterval):
        self.re = re
        self.im = im

    @classmethod
    def point(cls, re: Rat, im: Rat = 0) -> "ComplexBox":
        return cls(DyadicInterval.point(re), DyadicInterval.point(im))

    def __repr__(self) -> str:
        return f"({self.re} + {self.im}i)"

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    def abs_square(self) -> DyadicInterval:
        return self.re.square() + self.im.square()


class Enclosure:
    """A real value carried as an interval plus, when known, its exact value.

    Bound formulas mix exactly representable factors (rational powers of
    integers) with irrational ones (heights, square roots).  Tracking
    exactness lets comparisons at equality be decided instead of failing
    with an inconclusive enclosure.
    """

    __slots__ = ("interval", "exact")

    def __init__(self, interval: DyadicInterval, exact: Fraction | None = None):
        if exact is not None:
            exact = Fraction(exact)
            if not interval.contains(exact):
                raise ValueError("exact value outside its interval")
        self.interval = interval
        self.exact = exact

    @classmethod
    def of(cls, v: Rat) -> "Enclosure":
        v = Fraction(v)
        return cls(DyadicInterval.point(v), v)

    @classmethod
    def of_interval(cls, iv: DyadicInterval) -> "Enclosure":
        exact = iv.lo if iv.lo == iv.hi else None
        return cls(iv, exact)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"Enclosure({format_rational(self.exact)})"
        return f"Enclosure({self.interval})"

    def __mul__(self, other) -> "Enclosure":
        if not isinstance(other, Enclosure):
            other = Enclosure.of(other)
        if self.exact is not None and other.exact is not None:
            return Enclosure.of(self.exact * other.exact)
        return Enclosure(self.interval * other.interval)

    __rmul__ = __mul__

    def __add__(self, other) -> "Enclosure":
        if not isinstance(other, Enclosure):
            other = Enclosure.of(other)
        if self.exact is not None and other.exact is not None:
            return Enclosure.of(self.exact + other.exact)
        return Enclosure(self.interval + other.interval)

    __radd__ = __add__

    def __truediv__(self, other) -> "Enclosure":
        if not isinstance(other, Enclosure):
            other = Enclosure.of(other)
        if self.exact is not None and other.exact is not None and other.exact != 0:
            return Enclosure.of(self.exact / other.exact)
        return Enclosure(self.interval / other.interval)

    def __pow__(self, n: int) -> "Enclosure":
        if self.exact is not None:
            if n >= 0 or self.exact != 0:
                return Enclosure.of(self.exact ** n)
        return Enclosure(self.interval ** n)

    def nth_root(self, n: int, bits: int = 64) -> "Enclosure":
        if self.exact is not None and self.exact >= 0:
            num, den = self.exact.numerator, self.exact.denominator
            rn, rd = iroot_floor(num, n), iroot_floor(den, n)
            if rn ** n == num and rd ** n == den:
                return Enclosure.of(Fraction(rn, rd))
        return Enclosure(self.interval.nth_root(n, bits))

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    def leq(self, other: "Enclosure") -> bool | None:
        """Certified self <= other; None when the enclosures cannot decide."""
        if self.exact is not None and other.exact is not None:
            return self.exact <= other.exact
        if self.hi <= other.lo:
            return True
        if self.lo > other.hi:
            return False
        return None

    def less(self, other: "Enclosure") -> bool | None:
        if self.exact is not None and other.exact is not None:
            return self.exact < other.exact
        if self.hi < other.lo:
            return True
        if self.lo >= other.hi:
            return False
        return None


def pow2_enclosure(exponent: Fraction, bits: int = 64) -> Enclosure:
    """2**exponent for a rational exponent; exact when the exponent is integral."""
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return Enclosure.of(Fraction(2) ** exponent.numerator)
    powered = Enclosure.of(Fraction(2) ** exponent.numerator)
    return powered.nth_root(exponent.denominator, bits)


def rational_power(base: Rat, exponent: Fraction, bits: int = 64) -> Enclosure:
    """base**exponent for base >= 0 and rational exponent."""
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base < 0:
        raise ValueError("negative base")
    if exponent.denominator == 1:
        if base == 0 and exponent.numerator <= 0:
            raise ZeroDivisionError("0 to a nonpositive power")
        return Enclosure.of(base ** exponent.numerator)
    if base == 0:
        return Enclosure.of(0)
    powered = Enclosure.of(base ** exponent.numerator)
    return powered.nth_root(exponent.denominator, bits)
