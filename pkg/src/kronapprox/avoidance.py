"""Finding lattice points outside a prescribed algebraic set.

Two constructions are implemented.  For a union of zero sets of polynomial
systems, a product polynomial with one factor per system is probed on the
grid of small integer combinations of the successive-minima vectors; a
nonvanishing point exists on that grid whenever the lattice is not contained
in the zero set, and exact arithmetic decides vanishing pointwise.  For a
union of full-rank sublattices, complete enumeration by norm returns the
first point outside all of them, and its norm is certified against the
explicit sublattice-avoidance bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (BoundViolation, CannotWitnessNonvanishing,
                     NoProperSublattice, NotFoundWithinRadius,
                     PrecisionCapExceeded, ValidationError)
from .field import FieldElement
from .heights import HeightEnclosure
from .intervals import DyadicInterval, Enclosure, rational_power
from .lattices import (EmbeddedLattice, EnumPoint, MinimaResult, NormValue,
                       Sublattice, enumerate_by_norm, intersect_all,
                       supnorm_element)

PRECISION_CAP_BITS = 1 << 14


class MultiPoly:
    """Multivariate polynomial over Q: exponent tuples mapped to coefficients."""

    def __init__(self, nvars: int, terms: dict):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            e = tuple(int(v) for v in exps)
            if len(e) != self.nvars or any(v < 0 for v in e):
                raise ValidationError(f"bad exponent vector {e}")
            c = Fraction(coeff)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c}
        if not self.terms:
            raise ValidationError("zero polynomial not allowed")

    @property
    def degree(self) -> int:
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def eval_field(self, point: Sequence[FieldElement]) -> FieldElement:
        field = point[0].field
        acc = field.zero
        for exps, coeff in self.terms.items():
            term = field.from_rational(coeff)
            for x, e in zip(point, exps):
                if e:
                    term = term * x ** e
            acc = acc + term
        return acc

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.terms})"


class PolySystemSet:
    """Systems S_1 ... S_m of homogeneous polynomials; the avoided set is the
    union of their zero sets."""

    def __init__(self, nvars: int, systems: Sequence[Sequence[MultiPoly]],
                 zero_locus_trivial: bool = False):
        self.nvars = int(nvars)
        self.systems = [list(sys) for sys in systems]
        if not self.systems or any(not sys for sys in self.systems):
            raise ValidationError("each system must be a nonempty polynomial list")
        for sys in self.systems:
            for p in sys:
                if p.nvars != self.nvars:
                    raise ValidationError("polynomial variable count mismatch")
                if not p.is_homogeneous():
                    raise ValidationError("polynomials must be homogeneous")
                if p.degree < 1:
                    raise ValidationError("polynomials must have positive degree")
        self.zero_locus_trivial = bool(zero_locus_trivial)
        if self.zero_locus_trivial:
            self.grid_degree = 1
        else:
            self.grid_degree = sum(max(p.degree for p in sys) for sys in self.systems)

    def member(self, point: Sequence[FieldElement]) -> bool:
        """Exact membership of a point in the avoided set: some system has
        all its polynomials vanishing there."""
        for sys in self.systems:
            if all(not p.eval_field(point) for p in sys):
                return True
        return False


@dataclass
class NonvanishingCertificate:
    system_index: int
    poly_index: int
    value_interval: DyadicInterval
    bits: int


@dataclass
class AvoidWitness:
    kind: str  # "polynomial" | "sublattice"
    y_coords: tuple[int, ...]
    y_embedded: list  # list[FieldElement]
    norm: NormValue
    certificates: list[NonvanishingCertificate]
    xi: tuple[int, ...] | None = None
    bound: Enclosure | None = None


def _grid_points(side: int, dim: int):
    """I(side)^dim = {0..side}^dim in increasing sup-norm shells, then
    lexicographic within a shell."""
    for shell in range(side + 1):
        for xi in itertools.product(range(shell + 1), repeat=dim):
            if max(xi) == shell:
                yield xi


def certify_nonzero(value: FieldElement) -> tuple[DyadicInterval, int]:
    """Interval excluding zero for an exactly nonzero field element."""
    assert value
    bits = 64
    while bits <= PRECISION_CAP_BITS:
        iv = value.evaluate(bits)
        if iv.excludes_zero():
            return iv, bits
        bits *= 2
    raise PrecisionCapExceeded("cannot separate a nonzero value from zero "
                               f"within {PRECISION_CAP_BITS} bits")


def select_product_poly(avoid: PolySystemSet, lattice: EmbeddedLattice,
                        minima: MinimaResult) -> list[tuple[int, MultiPoly]]:
    """For each system, the first polynomial that does not vanish identically
    on the probe grid; exact evaluation decides.  Returns (index, poly) pairs.

    A polynomial of degree <= the grid side that vanishes on the whole grid
    vanishes on the real span of the minima vectors, hence on the lattice;
    that case is an input error, not a search failure.
    """
    side = avoid.grid_degree
    chosen: list[tuple[int, MultiPoly]] = []
    grid = list(_grid_points(side, lattice.rank))
    for i, sys in enumerate(avoid.systems):
        pick = None
        for j, poly in enumerate(sys):
            for xi in grid:
                point = _combine(minima, xi, lattice)
                if poly.eval_field(point):
                    pick = (j, poly)
                    break
            if pick is not None:
                break
        if pick is None:
            raise CannotWitnessNonvanishing(
                f"every polynomial of system {i} vanishes on the whole probe "
                "grid, so the lattice lies inside that zero set")
        chosen.append(pick)
    return chosen


def _combine(minima: MinimaResult, xi: Sequence[int],
             lattice: EmbeddedLattice) -> list[FieldElement]:
    vec = [lattice.field.zero for _ in range(lattice.dim)]
    for c, pt in zip(xi, minima.points):
        if c:
            vec = [v + c * e for v, e in zip(vec, pt)]
    return vec


def grid_avoid(avoid: PolySystemSet, lattice: EmbeddedLattice,
               minima: MinimaResult, alpha_height: HeightEnclosure,
               chosen: list[tuple[int, MultiPoly]] | None = None) -> AvoidWitness:
    """First grid combination of the minima vectors where every chosen
    system polynomial is (exactly, certifiably) nonzero."""
    if avoid.nvars != lattice.dim:
        raise ValidationError("polynomial variable count must equal the "
                              "embedded dimension")
    if chosen is None:
        chosen = select_product_poly(avoid, lattice, minima)
    side = avoid.grid_degree
    sd = lattice.rank
    for xi in _grid_points(side, sd):
        point = _combine(minima, xi, lattice)
        values = [poly.eval_field(point) for _, poly in chosen]
        if all(values):
            certs = []
            for i, ((j, _), val) in enumerate(zip(chosen, values)):
                iv, bits = certify_nonzero(val)
                certs.append(NonvanishingCertificate(i, j, iv, bits))
            coords = tuple(
                sum(c * v[k] for c, v in zip(xi, minima.vectors))
                for k in range(sd))
            norm = NormValue(supnorm_element(point))
            witness = AvoidWitness(kind="polynomial", y_coords=coords,
                                   y_embedded=point, norm=norm,
                                   certificates=certs, xi=tuple(xi))
            _assert_grid_bound(witness, lattice, avoid, alpha_height)
            return witness
    raise CannotWitnessNonvanishing(
        "no grid point avoids the zero sets; the product polynomial "
        "vanishes identically on the lattice")


def grid_norm_bound(lattice: EmbeddedLattice, grid_degree: int,
                    alpha_height: HeightEnclosure, bits: int = 96) -> Enclosure:
    """sd * M * (sqrt(2) h(alpha))**(sd-1) * det, the guaranteed witness bound."""
    sd = lattice.rank
    root2_pow = rational_power(2, Fraction(sd - 1, 2), bits)
    h_pow = alpha_height.pow_enclosure(sd - 1, bits)
    det = lattice.determinant_enclosure(bits)
    return Enclosure.of(sd * grid_degree) * root2_pow * h_pow * det


def _assert_grid_bound(witness: AvoidWitness, lattice: EmbeddedLattice,
                       avoid: PolySystemSet, alpha_height: HeightEnclosure) -> None:
    bound = grid_norm_bound(lattice, avoid.grid_degree, alpha_height)
    witness.bound = bound
    if not norm_leq(witness.norm, lambda bits: grid_norm_bound(
            lattice, avoid.grid_degree, alpha_height, bits)):
        raise BoundViolation(
            f"grid witness norm {witness.norm.interval(32)} exceeds its "
            f"guaranteed bound {bound.interval}")


def norm_leq(norm: NormValue, bound_fn: Callable[[int], Enclosure],
              strict: bool = False) -> bool:
    bits = 96
    while bits <= PRECISION_CAP_BITS:
        iv = norm.interval(bits)
        bound = bound_fn(bits)
        if iv.hi < bound.lo or (not strict and iv.hi == bound.lo == bound.hi
                                and bound.exact is not None):
            return True
        if iv.lo > bound.hi:
            return False
        if bound.exact is not None:
            cmp = norm.cmp_fraction(bound.exact)
            return cmp < 0 if strict else cmp <= 0
        bits *= 2
    raise PrecisionCapExceeded("norm-versus-bound comparison undecided at "
                               f"{PRECISION_CAP_BITS} bits")


@dataclass
class SublatticeBound:
    """The explicit avoidance bound and its ingredients."""

    total: Enclosure
    det_products: list  # D_i = index_i * det, as Enclosures
    capacity: Enclosure  # D**(1/sd)
    sum_term: Enclosure  # sum(D/D_i) - m + 1


def sublattice_bound(lattice: EmbeddedLattice, indices: Sequence[int],
                     alpha_height: HeightEnclosure, bits: int = 96) -> SublatticeBound:
    """(sqrt2 h(alpha))**(sd-1) det (sum D/D_i - m + 1) + D**(1/sd)."""
    sd = lattice.rank
    m = len(indices)
    det = lattice.determinant_enclosure(bits)
    d_values = [Enclosure.of(idx) * det for idx in indices]
    # D/D_i = prod of the other indices times det**(m-1): all exact integers
    # times det powers, so assemble from the index products directly
    big_d = Enclosure.of(1)
    for dv in d_values:
        big_d = big_d * dv
    sum_ratios = Enclosure.of(0)
    for i in range(m):
        ratio = Enclosure.of(1)
        for j in range(m):
            if j != i:
                ratio = ratio * d_values[j]
        sum_ratios = sum_ratios + ratio
    sum_term = sum_ratios + Enclosure.of(1 - m)
    root2_pow = rational_power(2, Fraction(sd - 1, 2), bits)
    h_pow = alpha_height.pow_enclosure(sd - 1, bits)
    capacity = big_d.nth_root(sd, bits)
    total = root2_pow * h_pow * det * sum_term + capacity
    return SublatticeBound(total=total, det_products=d_values,
                           capacity=capacity, sum_term=sum_term)


def sublattice_avoid(lattice: EmbeddedLattice, sublattices: Sequence[Sublattice],
                     alpha_height: HeightEnclosure) -> AvoidWitness:
    """First enumerated lattice point outside every given full-rank
    sublattice of the coefficient lattice, norm-certified below the bound."""
    subs = list(sublattices)
    if not subs:
        raise ValidationError("need at least one sublattice to avoid")
    for i, gamma in enumerate(subs):
        if gamma.n != lattice.rank:
            raise ValidationError("sublattice dimension mismatch")
        if gamma.index == 1:
            raise NoProperSublattice(
                f"sublattice {i} has index 1; it covers the whole lattice")
    omega = intersect_all(subs)
    assert omega.index >= 2
    indices = [g.index for g in subs]
    bound = sublattice_bound(lattice, indices, alpha_height)
    radius = bound.total.hi

    def outside_all(pt: EnumPoint) -> bool:
        return not any(g.contains(pt.coeffs) for g in subs)

    try:
        pt = enumerate_by_norm(lattice, radius, outside_all)
    except NotFoundWithinRadius as exc:
        raise BoundViolation(
            "no avoiding point within the guaranteed radius; this "
            "contradicts the avoidance theorem") from exc
    ok = norm_leq(pt.norm, lambda bits: sublattice_bound(
        lattice, indices, alpha_height, bits).total, strict=True)
    if not ok:
        raise BoundViolation(
            f"avoiding point norm {pt.norm.interval(32)} is not strictly "
            f"below the guaranteed bound {bound.total.interval}")
    witness = AvoidWitness(kind="sublattice", y_coords=pt.coeffs,
                           y_embedded=pt.vector, norm=pt.norm,
                           certificates=[], bound=bound.total)
    return witness
