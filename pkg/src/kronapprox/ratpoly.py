"""Dense univariate polynomial arithmetic over the rationals.

Polynomials are lists of Fractions in ascending order (constant term first).
Everything here is exact; interval evaluation is the only operation that
returns enclosures.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .intervals import ComplexBox, DyadicInterval

Poly = list  # list[Fraction], ascending


def normalize(p: Poly) -> Poly:
    q = [Fraction(c) for c in p]
    while q and q[-1] == 0:
        q.pop()
    return q


def degree(p: Poly) -> int:
    """Degree with deg 0 for constants; -1 for the zero polynomial."""
    q = normalize(p)
    return len(q) - 1


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_scale(p: Poly, c: Fraction) -> Poly:
    return normalize([ci * c for ci in p])


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_scale(q, Fraction(-1)))


def poly_mul(p: Poly, q: Poly) -> Poly:
    p, q = normalize(p), normalize(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = normalize(p), normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and rem:
        k = len(rem) - 1 - dq
        c = rem[-1] / lead
        quo[k] = c
        for i in range(len(q)):
            rem[k + i] -= c * q[i]
        rem = normalize(rem)
        if not rem:
            break
    return normalize(quo), rem


def poly_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns (g, u, v) with u*p + v*q = g, g monic or zero."""
    r0, r1 = normalize(p), normalize(q)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, poly_sub(u0, poly_mul(quo, u1))
        v0, v1 = v1, poly_sub(v0, poly_mul(quo, v1))
    if r0:
        lead = r0[-1]
        r0 = poly_scale(r0, 1 / lead)
        u0 = poly_scale(u0, 1 / lead)
        v0 = poly_scale(v0, 1 / lead)
    return r0, u0, v0


def poly_derivative(p: Poly) -> Poly:
    return normalize([Fraction(i) * p[i] for i in range(1, len(p))])


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(normalize(p)):
        acc = acc * x + c
    return acc


def poly_eval_interval(p: Poly, x: DyadicInterval) -> DyadicInterval:
    acc = DyadicInterval.point(0)
    for c in reversed(normalize(p)):
        acc = acc * x + DyadicInterval.point(c)
    return acc


def poly_eval_box(p: Poly, z: ComplexBox) -> ComplexBox:
    acc = ComplexBox.point(0)
    for c in reversed(normalize(p)):
        acc = acc * z + ComplexBox.point(c)
    return acc


def to_primitive_int(p: Poly) -> list[int]:
    """Scale a rational polynomial to integer coefficients with content 1
    and positive leading coefficient."""
    q = normalize(p)
    if not q:
        return []
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in q]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def max_abs_coeff(p) -> Fraction:
    q = normalize(list(p))
    if not q:
        return Fraction(0)
    return max(abs(Fraction(c)) for c in q)
