"""Lattice geometry: embedded algebraic lattices, sup-norm enumeration,
successive minima, and integer sublattice arithmetic.

An embedded lattice is a full-rank free Z-module with column vectors whose
entries live in the ambient real algebraic field, so all norm comparisons
can fall back to exact sign tests.  Point enumeration is complete by
construction: coefficient boxes come from exact pseudo-inverse row norms.

Enumeration order is total and deterministic: ascending sup-norm, then
ascending l1-norm of the integer coefficient vector, then descending
lexicographic order on the coefficient vector (so among the unit vectors of
Z^n the first coordinate vector comes first).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .errors import (CapExceeded, NotFoundWithinRadius, RankCapExceeded,
                     RankDeficient, ValidationError)
from .field import FieldDescriptor, FieldElement
from .intervals import DyadicInterval, Enclosure
from .linalg import (det, hnf_with_transform, identity_int, int_det,
                     integer_kernel, inverse, mat_mul_int)

RANK_CAP = 10
ENUMERATION_CAP = 4_000_000


def supnorm_element(vec: Sequence[FieldElement]) -> FieldElement:
    """Exact sup-norm of a vector over the ambient field, as a field element."""
    acc = abs(vec[0])
    for v in vec[1:]:
        a = abs(v)
        if (a - acc).sign() > 0:
            acc = a
    return acc


class NormValue:
    """A nonnegative field element with cached interval refinement and a
    certified three-way comparison."""

    __slots__ = ("elem", "_iv", "_bits")

    def __init__(self, elem: FieldElement):
        self.elem = elem
        self._iv: DyadicInterval | None = None
        self._bits = 0

    def interval(self, bits: int) -> DyadicInterval:
        if self._iv is None or self._bits < bits:
            self._iv = self.elem.evaluate(bits)
            self._bits = bits
        return self._iv

    def cmp(self, other: "NormValue") -> int:
        a, b = self.interval(48), other.interval(48)
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        return (self.elem - other.elem).sign()

    def cmp_fraction(self, r: Fraction) -> int:
        iv = self.interval(48)
        if iv.hi < r:
            return -1
        if iv.lo > r:
            return 1
        return (self.elem - r).sign()

    def __repr__(self) -> str:
        return f"NormValue({self.interval(20)})"


@dataclass
class ModuleProvenance:
    """Structure data carried from a module construction for closed-form
    determinant checks and bound formulas."""

    s: int
    w: int
    d: int
    r1: int
    r2: int
    disc: int
    ideal_norms: list  # list[Fraction]
    module_disc: Fraction


class EmbeddedLattice:
    """Full-rank lattice with columns over the ambient field."""

    def __init__(self, field: FieldDescriptor, columns: Sequence[Sequence[FieldElement]],
                 provenance: ModuleProvenance | None = None):
        self.field = field
        self.columns = [list(col) for col in columns]
        self.rank = len(self.columns)
        if self.rank == 0:
            raise ValidationError("lattice needs at least one basis vector")
        self.dim = len(self.columns[0])
        if any(len(c) != self.dim for c in self.columns):
            raise ValidationError("ragged basis")
        if self.rank > self.dim:
            raise ValidationError("more basis vectors than ambient coordinates")
        self.provenance = provenance
        gram = [[self._dot(a, b) for b in self.columns] for a in self.columns]
        g = det(gram)
        if not g:
            raise RankDeficient("basis vectors are linearly dependent")
        if not g.is_rational():
            raise ValidationError("Gram determinant is irrational; basis data "
                                  "is not an embedded module lattice")
        self.gram_det: Fraction = g.as_fraction()
        if self.gram_det < 0:
            raise RankDeficient("Gram determinant negative; data inconsistent")
        self._points_helper: _CoefficientBox | None = None

    @staticmethod
    def _dot(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> FieldElement:
        acc = a[0] * b[0]
        for x, y in zip(a[1:], b[1:]):
            acc = acc + x * y
        return acc

    @classmethod
    def from_rational_basis(cls, columns: Sequence[Sequence[Fraction]]) -> "EmbeddedLattice":
        """Lattice in Q^n, wrapped over the degree-one ambient field."""
        from .field import rational_field
        q_field = rational_field()
        cols = [[q_field.from_rational(v) for v in col] for col in columns]
        return cls(q_field, cols)

    def determinant_enclosure(self, bits: int = 64) -> Enclosure:
        return Enclosure.of(self.gram_det).nth_root(2, bits)

    def point(self, coeffs: Sequence[int]) -> list[FieldElement]:
        vec = [self.field.zero for _ in range(self.dim)]
        for c, col in zip(coeffs, self.columns):
            if c:
                vec = [v + c * e for v, e in zip(vec, col)]
        return vec

    def _coeff_box(self) -> "_CoefficientBox":
        if self._points_helper is None:
            self._points_helper = _CoefficientBox(self)
        return self._points_helper


class _CoefficientBox:
    """Exact coefficient bounds: if |x|_inf <= mu and x = sum c_i b_i then
    |c_i| <= row_norm_i * mu, where row norms come from the pseudo-inverse."""

    def __init__(self, lattice: EmbeddedLattice):
        gram = [[EmbeddedLattice._dot(a, b) for b in lattice.columns]
                for a in lattice.columns]
        ginv = inverse(gram)
        assert ginv is not None
        n, dim = lattice.rank, lattice.dim
        # P = G^-1 B^T, rows indexed by coefficients
        rows = []
        for i in range(n):
            row = []
            for j in range(dim):
                acc = ginv[i][0] * lattice.columns[0][j]
                for k in range(1, n):
                    acc = acc + ginv[i][k] * lattice.columns[k][j]
                row.append(acc)
            rows.append(row)
        self.row_norm_upper: list[Fraction] = []
        for row in rows:
            acc = abs(row[0])
            for v in row[1:]:
                acc = acc + abs(v)
            self.row_norm_upper.append(acc.evaluate(32).hi)

    def ranges(self, mu: Fraction) -> list[int]:
        out = []
        for rn in self.row_norm_upper:
            bound = rn * mu
            out.append(int(bound.numerator // bound.denominator))
        return out


@dataclass
class EnumPoint:
    coeffs: tuple[int, ...]
    vector: list  # list[FieldElement]
    norm: NormValue


def _order_cmp(a: EnumPoint, b: EnumPoint) -> int:
    c = a.norm.cmp(b.norm)
    if c:
        return c
    l1a, l1b = sum(map(abs, a.coeffs)), sum(map(abs, b.coeffs))
    if l1a != l1b:
        return -1 if l1a < l1b else 1
    ka = tuple(-v for v in a.coeffs)
    kb = tuple(-v for v in b.coeffs)
    if ka == kb:
        return 0
    return -1 if ka < kb else 1


def points_within(lattice: EmbeddedLattice, radius: Fraction,
                  exclude_zero: bool = True) -> list[EnumPoint]:
    """All lattice points of sup-norm <= radius, in enumeration order."""
    radius = Fraction(radius)
    if radius < 0:
        return []
    if lattice.rank > RANK_CAP:
        raise RankCapExceeded(f"rank {lattice.rank} exceeds cap {RANK_CAP}")
    box = lattice._coeff_box().ranges(radius)
    total = 1
    for b in box:
        total *= 2 * b + 1
        if total > ENUMERATION_CAP:
            raise CapExceeded(f"enumeration box of {total}+ points exceeds cap")
    out = []
    for coeffs in itertools.product(*[range(-b, b + 1) for b in box]):
        if exclude_zero and not any(coeffs):
            continue
        vec = lattice.point(coeffs)
        norm = NormValue(supnorm_element(vec))
        if norm.cmp_fraction(radius) <= 0:
            out.append(EnumPoint(tuple(coeffs), vec, norm))
    out.sort(key=cmp_to_key(_order_cmp))
    return out


def enumerate_by_norm(lattice: EmbeddedLattice, radius: Fraction,
                      predicate: Callable[[EnumPoint], bool] | None = None,
                      exclude_zero: bool = True) -> EnumPoint:
    """First point in enumeration order with sup-norm <= radius satisfying
    the predicate; raises NotFoundWithinRadius when none exists."""
    for pt in points_within(lattice, radius, exclude_zero=exclude_zero):
        if predicate is None or predicate(pt):
            return pt
    raise NotFoundWithinRadius(
        f"complete enumeration up to radius {radius} found no matching vector")


@dataclass
class MinimaResult:
    lambdas: list[NormValue]
    vectors: list[tuple[int, ...]]
    points: list  # list of list[FieldElement]
    minkowski_ok: bool

    def lambda_intervals(self, bits: int = 64) -> list[DyadicInterval]:
        return [nv.interval(bits) for nv in self.lambdas]


def _q_rank_append(rows: list[list[Fraction]], new: Sequence[int]) -> bool:
    """Append an integer vector to a row-reduced family if it grows the rank."""
    vec = [Fraction(v) for v in new]
    for row in rows:
        piv = next(i for i, v in enumerate(row) if v)
        if vec[piv]:
            f = vec[piv] / row[piv]
            vec = [a - f * b for a, b in zip(vec, row)]
    if not any(vec):
        return False
    rows.append(vec)
    return True


def successive_minima(lattice: EmbeddedLattice) -> MinimaResult:
    """Sup-norm successive minima with attaining vectors, exactly.

    Complete enumeration up to the largest basis-vector norm (which bounds
    every minimum from above), greedy filtering by exact rank growth.
    """
    n = lattice.rank
    if n > RANK_CAP:
        raise RankCapExceeded(f"rank {n} exceeds cap {RANK_CAP}")
    basis_norm_upper = max(
        NormValue(supnorm_element(col)).interval(32).hi for col in lattice.columns)
    pts = points_within(lattice, basis_norm_upper, exclude_zero=True)
    rows: list[list[Fraction]] = []
    lambdas: list[NormValue] = []
    vectors: list[tuple[int, ...]] = []
    chosen_pts = []
    for pt in pts:
        if _q_rank_append(rows, pt.coeffs):
            lambdas.append(pt.norm)
            vectors.append(pt.coeffs)
            chosen_pts.append(pt.vector)
            if len(lambdas) == n:
                break
    assert len(lambdas) == n, "enumeration radius must cover all minima"
    # Minkowski sandwich det/n! <= prod(lambda_i) <= det, checked on squares
    prod = lambdas[0].elem
    for nv in lambdas[1:]:
        prod = prod * nv.elem
    prod_sq = prod * prod
    det_sq = lattice.gram_det
    upper_ok = (prod_sq - det_sq).sign() <= 0
    lower_ok = (prod_sq * Fraction(math.factorial(n)) ** 2 - det_sq).sign() >= 0
    return MinimaResult(lambdas, vectors, chosen_pts, upper_ok and lower_ok)


# ---------------------------------------------------------------------------
# Integer sublattices of the coefficient lattice


class Sublattice:
    """Full-rank sublattice of Z^n given by integer basis columns."""

    def __init__(self, columns: Sequence[Sequence[int]]):
        cols = [list(map(int, c)) for c in columns]
        if not cols or len(cols) != len(cols[0]):
            raise ValidationError("sublattice basis must be square")
        n = len(cols)
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]  # rows
        d = int_det(matrix)
        if d == 0:
            raise RankDeficient("sublattice basis is singular")
        self.n = n
        self.matrix = matrix  # row-major, columns are basis vectors
        self.index = abs(d)
        h, _, _ = hnf_with_transform(matrix)
        self.hnf = h

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.hnf == other.hnf

    def __hash__(self) -> int:
        return hash(tuple(map(tuple, self.hnf)))

    def contains(self, x: Sequence[int]) -> bool:
        """Exact membership via forward substitution on the HNF."""
        h = self.hnf
        n = self.n
        rem = list(map(int, x))
        coeff = [0] * n
        for i in range(n):
            num = rem[i]
            if num % h[i][i]:
                return False
            coeff[i] = num // h[i][i]
            for r in range(i, n):
                rem[r] -= coeff[i] * h[r][i]
        return all(v == 0 for v in rem)

    def intersect(self, other: "Sublattice") -> "Sublattice":
        """Intersection via the integer kernel of the stacked basis map."""
        if self.n != other.n:
            raise ValidationError("dimension mismatch")
        n = self.n
        stacked = [[self.matrix[i][j] for j in range(n)]
                   + [-other.matrix[i][j] for j in range(n)] for i in range(n)]
        kern = integer_kernel(stacked)
        assert len(kern) == n, "two full-rank lattices always intersect fully"
        cols = []
        for v in kern:
            cols.append([sum(self.matrix[i][j] * v[j] for j in range(n))
                         for i in range(n)])
        result = Sublattice(cols)
        assert result.index <= self.index * other.index
        return result


def intersect_all(lattices: Iterable[Sublattice]) -> Sublattice:
    lattices = list(lattices)
    if not lattices:
        raise ValidationError("need at least one sublattice")
    acc = lattices[0]
    for lat in lattices[1:]:
        acc = acc.intersect(lat)
    return acc
