"""One real algebraic number field serves as the ambient coordinate domain.

The field is Q(gamma) for a designated real root gamma of a monic integer
irreducible polynomial, pinned down by an isolating rational interval.
Elements are coordinate vectors over the power basis 1, gamma, ...,
gamma^(d-1); all arithmetic and all zero and sign tests are exact.  Interval
output comes from certified refinement of the root enclosure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import EmptyOrAmbiguousRootInterval, ReducibleMinPoly, ValidationError
from .intervals import DyadicInterval, dyadic_ceil, dyadic_floor
from .linalg import nullspace
from .ratpoly import (normalize, poly_derivative, poly_divmod, poly_eval,
                      poly_eval_interval, poly_xgcd, to_primitive_int)

MAX_FIELD_DEGREE = 16


def is_irreducible(coeffs: Sequence[int]) -> bool:
    """Irreducibility over Q of an integer polynomial (ascending coeffs)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), x, domain="QQ")
    if poly.degree() < 1:
        return False
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == poly.degree()


def count_real_roots(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Number of real roots in [lo, hi], by Sturm sequences (exact)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), x, domain="QQ")
    return poly.count_roots(sympy.Rational(lo.numerator, lo.denominator),
                            sympy.Rational(hi.numerator, hi.denominator))


class FieldDescriptor:
    """Q(gamma) with gamma the unique root of ``minpoly`` in the interval."""

    def __init__(self, minpoly: Sequence[int], root_lo: Fraction, root_hi: Fraction):
        self.minpoly: tuple[int, ...] = tuple(int(c) for c in minpoly)
        self.degree = len(self.minpoly) - 1
        self.root_lo = Fraction(root_lo)
        self.root_hi = Fraction(root_hi)
        self._minpoly_frac = [Fraction(c) for c in self.minpoly]
        self._deriv = poly_derivative(self._minpoly_frac)
        self._powers = self._reduction_table()
        if self.degree == 1:
            root = Fraction(-self.minpoly[0])
            self._enc = (root, root)
            self._sign_at_lo = 0
        else:
            self._enc = (self.root_lo, self.root_hi)
            self._sign_at_lo = 1 if poly_eval(self._minpoly_frac, self.root_lo) > 0 else -1

    def _reduction_table(self) -> list[tuple[Fraction, ...]]:
        d = self.degree
        table = []
        # gamma^d = -(c_0 + ... + c_{d-1} gamma^{d-1})
        current = [Fraction(-c) for c in self._minpoly_frac[:d]]
        table.append(tuple(current))
        for _ in range(d - 2):
            shifted = [Fraction(0)] + current[:-1]
            top = current[-1]
            if top:
                for i in range(d):
                    shifted[i] += top * table[0][i]
            current = shifted
            table.append(tuple(current))
        return table

    # -- root enclosure -----------------------------------------------------

    def root_enclosure(self, bits: int) -> DyadicInterval:
        """Interval of width <= 2**-bits certified to contain gamma."""
        lo, hi = self._enc
        target = Fraction(1, 1 << bits)
        if hi - lo <= target:
            return DyadicInterval(lo, hi)
        f = self._minpoly_frac
        sign_lo = self._sign_at_lo
        while hi - lo > target:
            mid = (lo + hi) / 2
            fmid = poly_eval(f, mid)
            # mid is rational and f is irreducible of degree >= 2, so fmid != 0
            newton_done = False
            deriv_iv = poly_eval_interval(self._deriv, DyadicInterval(lo, hi))
            if deriv_iv.excludes_zero():
                n1 = mid - fmid / deriv_iv.lo
                n2 = mid - fmid / deriv_iv.hi
                nlo, nhi = (n1, n2) if n1 <= n2 else (n2, n1)
                # dyadic endpoints keep bit growth linear in the precision;
                # rounding is outward then clipped, so the root stays inside
                gap = hi - lo
                inv_gap = 2 / gap
                k = max(1, int(inv_gap.numerator // inv_gap.denominator).bit_length()) + 8
                nlo, nhi = max(dyadic_floor(nlo, k), lo), min(dyadic_ceil(nhi, k), hi)
                if nlo <= nhi and nhi - nlo < gap / 2:
                    lo, hi = nlo, nhi
                    newton_done = True
            if not newton_done:
                if (1 if fmid > 0 else -1) == sign_lo:
                    lo = mid
                else:
                    hi = mid
        self._enc = (lo, hi)
        self._sign_at_lo = sign_lo
        return DyadicInterval(lo, hi)

    # -- element constructors ------------------------------------------------

    def element(self, coords: Iterable) -> "FieldElement":
        c = [Fraction(v) for v in coords]
        if len(c) != self.degree:
            raise ValidationError(
                f"expected {self.degree} coordinates, got {len(c)}")
        return FieldElement(self, tuple(c))

    def from_rational(self, v) -> "FieldElement":
        return FieldElement(self, (Fraction(v),) + (Fraction(0),) * (self.degree - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_rational(1)

    @property
    def gamma(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_rational(-self.minpoly[0])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return FieldElement(self, tuple(coords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        return (self.minpoly == other.minpoly
                and self.root_lo == other.root_lo and self.root_hi == other.root_hi)

    def __hash__(self) -> int:
        return hash((self.minpoly, self.root_lo, self.root_hi))

    def __repr__(self) -> str:
        return f"FieldDescriptor(minpoly={list(self.minpoly)}, degree={self.degree})"


def field_validate(minpoly: Sequence[int], root_interval: tuple) -> FieldDescriptor:
    """Check a field description and return the validated descriptor.

    The polynomial must be monic, integral, irreducible over Q, of degree
    between 1 and 16; the interval must isolate exactly one real root.
    """
    coeffs = [int(c) for c in minpoly]
    coeffs_norm = list(coeffs)
    while coeffs_norm and coeffs_norm[-1] == 0:
        coeffs_norm.pop()
    if len(coeffs_norm) != len(coeffs) or len(coeffs) < 2:
        raise ValidationError("defining polynomial must have nonzero leading coefficient")
    degree = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise ValidationError("defining polynomial must be monic")
    if degree > MAX_FIELD_DEGREE:
        raise ValidationError(f"field degree {degree} exceeds cap {MAX_FIELD_DEGREE}")
    if not is_irreducible(coeffs):
        raise ReducibleMinPoly(f"{coeffs} is reducible over the rationals")
    lo, hi = Fraction(root_interval[0]), Fraction(root_interval[1])
    if lo > hi:
        raise EmptyOrAmbiguousRootInterval(f"interval [{lo}, {hi}] is empty")
    if degree == 1:
        root = Fraction(-coeffs[0])
        if not (lo <= root <= hi):
            raise EmptyOrAmbiguousRootInterval(
                f"interval [{lo}, {hi}] does not contain the root {root}")
        return FieldDescriptor(coeffs, root, root)
    fr = [Fraction(c) for c in coeffs]
    if poly_eval(fr, lo) == 0 or poly_eval(fr, hi) == 0:
        raise EmptyOrAmbiguousRootInterval(
            "interval endpoints must not be roots (irreducible of degree >= 2 "
            "has no rational roots, so the data is inconsistent)")
    n = count_real_roots(coeffs, lo, hi)
    if n == 0:
        raise EmptyOrAmbiguousRootInterval(f"no root of {coeffs} in [{lo}, {hi}]")
    if n > 1:
        raise EmptyOrAmbiguousRootInterval(f"{n} roots of {coeffs} in [{lo}, {hi}]")
    return FieldDescriptor(coeffs, lo, hi)


_RATIONAL_FIELD: FieldDescriptor | None = None


def rational_field() -> FieldDescriptor:
    """The degree-one ambient field Q, shared."""
    global _RATIONAL_FIELD
    if _RATIONAL_FIELD is None:
        _RATIONAL_FIELD = field_validate([0, 1], (0, 0))
    return _RATIONAL_FIELD


class FieldElement:
    """An element of Q(gamma) in power-basis coordinates.  Immutable."""

    __slots__ = ("field", "coords", "_eval_cache")

    def __init__(self, field: FieldDescriptor, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords
        self._eval_cache: DyadicInterval | None = None

    # -- basic structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field.minpoly == other.field.minpoly and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.minpoly, self.coords))

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coords[0]

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field.minpoly != self.field.minpoly:
                raise ValidationError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other) -> "FieldElement":
        return -(self - other)

    def __mul__(self, other) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.coords[0] * o.coords[0],))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        table = self.field._powers
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                red = table[k - d]
                for i in range(d):
                    out[i] += c * red[i]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        g, u, _ = poly_xgcd(list(self.coords), self.field._minpoly_frac)
        if len(g) != 1:
            raise ValidationError("element not invertible (field data inconsistent)")
        _, rem = poly_divmod(u, self.field._minpoly_frac)
        coords = list(rem) + [Fraction(0)] * (self.field.degree - len(rem))
        return FieldElement(self.field, tuple(coords))

    def __truediv__(self, other) -> "FieldElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        o = self._coerce(other)
        return o * self.inverse()

    # -- certified numerics ----------------------------------------------------

    def evaluate(self, bits: int) -> DyadicInterval:
        """Enclosure of the real value, of width <= 2**-bits * max(1, |value|).

        Monotone under refinement: the interval returned for a higher bit
        count is contained in any interval returned earlier.
        """
        if self.is_rational() or self.field.degree == 1:
            v = poly_eval(list(self.coords), self.field.root_lo) \
                if self.field.degree == 1 else self.coords[0]
            out = DyadicInterval.point(v)
            self._eval_cache = out
            return out
        k = max(32, bits + 8)
        while True:
            enc = self.field.root_enclosure(k)
            val = poly_eval_interval(list(self.coords), enc)
            mag = max(Fraction(1), val.abs().lo)
            if val.width <= mag * Fraction(1, 1 << (bits + 1)):
                out = val.round_outward(bits + 2)
                if self._eval_cache is not None:
                    out = out.intersect(self._eval_cache)
                self._eval_cache = out
                return out
            k *= 2

    def sign(self) -> int:
        """Exact sign: -1, 0, or 1."""
        if not self:
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        bits = 32
        while True:
            s = self.evaluate(bits).sign()
            if s is not None:
                return s
            bits *= 2

    def __abs__(self) -> "FieldElement":
        return self if self.sign() >= 0 else -self

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() >= 0

    # -- algebraic invariants ---------------------------------------------------

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer minimal polynomial, ascending coefficients."""
        d = self.field.degree
        powers = [self.field.one.coords]
        current = self.field.one
        for k in range(1, d + 1):
            current = current * self
            powers.append(current.coords)
            # columns x^0 .. x^k, rows = power-basis coordinates
            matrix = [[powers[j][i] for j in range(k + 1)] for i in range(d)]
            kernel = nullspace(matrix)
            if kernel:
                vec = kernel[0]
                assert vec[k] != 0
                poly = [c / vec[k] for c in vec]
                return tuple(to_primitive_int(poly))
        raise AssertionError("unreachable: element degree exceeds field degree")

    def algebraic_degree(self) -> int:
        return len(self.minimal_polynomial()) - 1


class ComplexFieldElement:
    """Element of E(i): a pair of field elements, for embedding matrices."""

    __slots__ = ("re", "im")

    def __init__(self, re: FieldElement, im: FieldElement):
        self.re = re
        self.im = im

    @classmethod
    def real(cls, x: FieldElement) -> "ComplexFieldElement":
        return cls(x, x.field.zero)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: "ComplexFieldElement") -> "ComplexFieldElement":
        return ComplexFieldElement(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexFieldElement") -> "ComplexFieldElement":
        return ComplexFieldElement(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexFieldElement":
        return ComplexFieldElement(-self.re, -self.im)

    def __mul__(self, other: "ComplexFieldElement") -> "ComplexFieldElement":
        return ComplexFieldElement(self.re * other.re - self.im * other.im,
                                   self.re * other.im + self.im * other.re)

    def conj(self) -> "ComplexFieldElement":
        return ComplexFieldElement(self.re, -self.im)

    def __truediv__(self, other: "ComplexFieldElement") -> "ComplexFieldElement":
        norm = other.re * other.re + other.im * other.im
        inv = norm.inverse()
        num = self * other.conj()
        return ComplexFieldElement(num.re * inv, num.im * inv)

    def __repr__(self) -> str:
        return f"ComplexFieldElement({self.re!r}, {self.im!r})"
