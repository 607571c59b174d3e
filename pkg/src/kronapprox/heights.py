"""Absolute multiplicative Weil heights, computed through Mahler measures.

For an algebraic number with primitive integer minimal polynomial f of
degree d, the height is M(f)**(1/d) where M(f) is the Mahler measure: the
absolute leading coefficient times the product of the absolute values of all
roots outside the unit circle.  Root locations come from certified complex
root isolation, so every height is a true enclosure; when every root can be
strictly classified against the unit circle the measure is known exactly as
a rational number, and rational powers of the height that stay rational are
reported exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy.polys.domains import QQ, ZZ
from sympy.polys.rootisolation import dup_isolate_all_roots

from .intervals import ComplexBox, DyadicInterval, Enclosure, rational_power
from .ratpoly import normalize, poly_eval_box, poly_eval_interval


@lru_cache(maxsize=None)
def isolate_roots(coeffs: tuple[int, ...], k: int) -> tuple[tuple[DyadicInterval, ...], tuple[ComplexBox, ...]]:
    """Certified enclosures of all complex roots, refined to width 2**-k.

    ``coeffs`` ascending.  Real roots come back as intervals, nonreal roots
    as boxes; conjugate pairs are both listed.
    """
    descending = [ZZ(c) for c in reversed(coeffs)]
    real_raw, cplx_raw = dup_isolate_all_roots(descending, ZZ, eps=QQ(1, 1 << k))
    reals = []
    for (lo, hi), mult in real_raw:
        iv = DyadicInterval(Fraction(int(lo.numerator), int(lo.denominator)),
                            Fraction(int(hi.numerator), int(hi.denominator)))
        reals.extend([iv] * mult)
    boxes = []
    for ((re1, im1), (re2, im2)), mult in cplx_raw:
        box = ComplexBox(
            DyadicInterval(Fraction(int(re1.numerator), int(re1.denominator)),
                           Fraction(int(re2.numerator), int(re2.denominator))),
            DyadicInterval(Fraction(int(im1.numerator), int(im1.denominator)),
                           Fraction(int(im2.numerator), int(im2.denominator))))
        boxes.extend([box] * mult)
    return tuple(reals), tuple(boxes)


def _max1(iv: DyadicInterval) -> DyadicInterval:
    return DyadicInterval(max(Fraction(1), iv.lo), max(Fraction(1), iv.hi))


class HeightEnclosure:
    """Height of the algebraic number defined by a primitive integer
    polynomial (ascending, irreducible, degree >= 1)."""

    def __init__(self, minpoly: tuple[int, ...]):
        coeffs = tuple(int(c) for c in minpoly)
        if len(coeffs) < 2 or coeffs[-1] == 0:
            raise ValueError("minimal polynomial must have degree >= 1")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.mahler_exact: Fraction | None = None
        self._classified = False
        if self.degree == 1:
            c0, c1 = coeffs
            self.mahler_exact = Fraction(max(abs(c0), abs(c1)))
            self._classified = True

    def mahler_sq(self, k: int) -> DyadicInterval:
        """Enclosure of M(f)**2 at root-isolation precision 2**-k."""
        if self.mahler_exact is not None:
            return DyadicInterval.point(self.mahler_exact ** 2)
        reals, boxes = isolate_roots(self.minpoly, k)
        acc = DyadicInterval.point(Fraction(self.minpoly[-1]) ** 2)
        for iv in reals:
            acc = acc * _max1(iv.square())
        for box in boxes:
            acc = acc * _max1(box.abs_square())
        return DyadicInterval(max(Fraction(1), acc.lo), acc.hi)

    def _classify(self) -> None:
        """Try to pin every root strictly inside or outside the unit circle;
        on success the Mahler measure is an exact rational."""
        if self._classified:
            return
        self._classified = True
        for k in (8, 16, 32, 64):
            reals, boxes = isolate_roots(self.minpoly, k)
            verdicts = []
            for sq in [iv.square() for iv in reals] + [b.abs_square() for b in boxes]:
                if sq.lo > 1:
                    verdicts.append(1)
                elif sq.hi < 1:
                    verdicts.append(-1)
                else:
                    verdicts.append(0)
            if 0 not in verdicts:
                if all(v == 1 for v in verdicts):
                    self.mahler_exact = Fraction(abs(self.minpoly[0]))
                elif all(v == -1 for v in verdicts):
                    self.mahler_exact = Fraction(abs(self.minpoly[-1]))
                return

    def height_interval(self, bits: int) -> DyadicInterval:
        """Enclosure of the height with width <= 2**-bits * value."""
        self._classify()
        if self.mahler_exact is not None:
            enc = rational_power(self.mahler_exact, Fraction(1, self.degree), bits + 4)
            return enc.interval
        k = max(16, bits + 4)
        while True:
            msq = self.mahler_sq(k)
            iv = msq.nth_root(2 * self.degree, bits + 4)
            iv = DyadicInterval(max(Fraction(1), iv.lo), iv.hi)
            if iv.width <= iv.lo * Fraction(1, 1 << bits):
                return iv
            k *= 2

    def pow_enclosure(self, n: int, bits: int = 64) -> Enclosure:
        """Enclosure of height**n, exact when M**(n/d) is rational."""
        if n == 0:
            return Enclosure.of(1)
        self._classify()
        if self.mahler_exact is not None:
            return rational_power(self.mahler_exact, Fraction(n, self.degree), bits + 4)
        iv = self.height_interval(bits + n.bit_length() + 4)
        return Enclosure.of_interval(iv ** n)

    def inverse_height(self) -> "HeightEnclosure":
        """Height of the reciprocal algebraic number (equal as a value, but
        kept separate so exactness follows the reversed polynomial)."""
        if self.minpoly[0] == 0:
            raise ZeroDivisionError("reciprocal of zero")
        rev = list(reversed(self.minpoly))
        if rev[-1] < 0:
            rev = [-c for c in rev]
        return HeightEnclosure(tuple(rev))


def height_of_rational(x: Fraction) -> Fraction:
    x = Fraction(x)
    return Fraction(max(abs(x.numerator), x.denominator))


class VectorHeight:
    """Height of a finite family of elements of the ambient field E,
    projectively with 1 adjoined: the quantity h(1 : b_1 : ... : b_n).

    The archimedean part multiplies max(1, |b_j|) over every embedding of E
    and takes the [E:Q]-th root; the nonarchimedean part is enclosed in
    [1, delta] where delta is the least common multiple of the leading
    coefficients of the entries' minimal polynomials.  For rational entries
    both parts are exact.
    """

    def __init__(self, elements):
        if not elements:
            raise ValueError("empty family")
        self.elements = list(elements)
        self.field = self.elements[0].field
        delta = 1
        self._rational = all(e.is_rational() for e in self.elements)
        for e in self.elements:
            lead = abs(e.minimal_polynomial()[-1])
            delta = delta * lead // gcd(delta, lead)
        self.delta = delta

    def _arch_sq(self, k: int) -> DyadicInterval:
        reals, boxes = isolate_roots(self.field.minpoly, k)
        coord_polys = [list(e.coords) for e in self.elements]
        acc = DyadicInterval.point(1)
        for root_iv in reals:
            m = DyadicInterval.point(1)
            for p in coord_polys:
                m = m.max_with(poly_eval_interval(p, root_iv).square())
            acc = acc * m
        for box in boxes:
            m = DyadicInterval.point(1)
            for p in coord_polys:
                m = m.max_with(poly_eval_box(p, box).abs_square())
            acc = acc * m
        return acc

    def enclosure(self, bits: int = 64) -> Enclosure:
        if self._rational:
            arch = max([Fraction(1)] + [abs(e.coords[0]) for e in self.elements])
            return Enclosure.of(arch * self.delta)
        ell = self.field.degree
        k = max(16, bits + 4)
        while True:
            arch_sq = self._arch_sq(k)
            arch = arch_sq.nth_root(2 * ell, bits + 6)
            arch = DyadicInterval(max(Fraction(1), arch.lo), arch.hi)
            iv = DyadicInterval(arch.lo, arch.hi * self.delta)
            if arch.width <= arch.lo * Fraction(1, 1 << bits):
                return Enclosure.of_interval(iv)
            k *= 2

    def pow_enclosure(self, n: int, bits: int = 64) -> Enclosure:
        if n == 0:
            return Enclosure.of(1)
        return self.enclosure(bits + n.bit_length() + 4) ** n
