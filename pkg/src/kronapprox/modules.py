"""Modules over the ring of integers of K and their embedded lattices.

A module is given by a pseudo-basis: s pairs (ideal, y) where the ideal is a
fractional ideal of K presented by a Z-basis and y is a vector in O_K^w.
The embedded lattice has the products (ideal basis element) * y as its
Z-basis, pushed through the real embedding of K^w.  The exact Gram
determinant is cross-checked against the closed form

    det = 2**(-s*r2) * |disc K|**(s/2) * prod_j N(I_j),

which holds when the pseudo-basis realizes the module decomposition; inputs
failing the check are rejected rather than silently accepted.

Also here: the denominator ideal of a module (all q in K with q*M integral)
and the arithmetic-complexity minimum over its elements that enters the
solver's bound formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ClosedFormMismatch, RankDeficient, ValidationError
from .heights import HeightEnclosure
from .intervals import Enclosure
from .lattices import (EmbeddedLattice, ModuleProvenance, NormValue,
                       Sublattice, points_within, supnorm_element)
from .linalg import det as rational_det
from .linalg import inverse as rational_inverse
from .subfield import KElement, SubfieldK


class IdealData:
    """Fractional ideal of K, presented by a Z-basis of d elements."""

    def __init__(self, K: SubfieldK, zbasis: Sequence[Sequence]):
        self.K = K
        self.zbasis: list[KElement] = [K.element(b) for b in zbasis]
        d = K.degree
        if len(self.zbasis) != d:
            raise ValidationError(f"ideal basis must have {d} elements")
        coords = [[c for c in K.to_integral_coords(b)] for b in self.zbasis]
        matrix = [[coords[j][i] for j in range(d)] for i in range(d)]
        dt = rational_det(matrix)
        if dt == 0:
            raise RankDeficient("ideal basis is linearly dependent")
        self.norm: Fraction = abs(dt)
        self._coords_matrix = matrix
        self._coords_inv = rational_inverse(matrix)
        # O_K-stability: each omega_i * beta_j must lie in the Z-span
        for omega in K.integral_basis:
            for beta in self.zbasis:
                if not self.contains(K.mul(omega, beta)):
                    raise ValidationError(
                        "ideal basis is not stable under the ring of integers")

    def contains(self, a: KElement) -> bool:
        target = self.K.to_integral_coords(a)
        sol = [sum(self._coords_inv[i][j] * target[j] for j in range(self.K.degree))
               for i in range(self.K.degree)]
        return all(c.denominator == 1 for c in sol)


class ModuleM:
    """O_K-module in K^w of rank s, via a pseudo-basis."""

    def __init__(self, K: SubfieldK, w: int, pseudo_basis: Sequence[tuple]):
        self.K = K
        self.w = int(w)
        if self.w < 1:
            raise ValidationError("w must be positive")
        self.s = len(pseudo_basis)
        if self.s < 1:
            raise ValidationError("need at least one pseudo-basis pair")
        if self.s > self.w:
            raise ValidationError("module rank cannot exceed the number of coordinates")
        self.ideals: list[IdealData] = []
        self.y_vectors: list[list[KElement]] = []
        for ideal_basis, y in pseudo_basis:
            ideal = ideal_basis if isinstance(ideal_basis, IdealData) \
                else IdealData(K, ideal_basis)
            self.ideals.append(ideal)
            yv = [K.element(c) for c in y]
            if len(yv) != self.w:
                raise ValidationError(f"y vector must have {self.w} coordinates")
            for c in yv:
                if not K.is_integral(c):
                    raise ValidationError(
                        "pseudo-basis vectors must have algebraic-integer coordinates")
            self.y_vectors.append(yv)

    def generators(self) -> list[list[KElement]]:
        """Z-basis of the module: ideal basis elements times y vectors,
        outer loop over pseudo-basis pairs, inner over ideal basis."""
        gens = []
        for ideal, y in zip(self.ideals, self.y_vectors):
            for beta in ideal.zbasis:
                gens.append([self.K.mul(beta, c) for c in y])
        return gens

    def discriminant(self) -> Fraction:
        prod = Fraction(1)
        for ideal in self.ideals:
            prod *= ideal.norm ** 2
        return Fraction(self.K.disc) * prod

    def is_integral(self) -> bool:
        return all(self.K.is_integral(c) for g in self.generators() for c in g)


def build_lattice(module: ModuleM) -> EmbeddedLattice:
    """Embedded lattice of the module, with the closed-form determinant check."""
    K = module.K
    columns = [K.minkowski_embed(g) for g in module.generators()]
    provenance = ModuleProvenance(
        s=module.s, w=module.w, d=K.degree, r1=K.r1, r2=K.r2, disc=K.disc,
        ideal_norms=[i.norm for i in module.ideals],
        module_disc=module.discriminant())
    lattice = EmbeddedLattice(K.ambient, columns, provenance=provenance)
    closed_sq = closed_form_det_sq(provenance)
    if lattice.gram_det != closed_sq:
        raise ClosedFormMismatch(
            f"exact determinant squared {lattice.gram_det} differs from the "
            f"closed form {closed_sq}; the pseudo-basis does not realize the "
            "module decomposition")
    return lattice


def closed_form_det_sq(p: ModuleProvenance) -> Fraction:
    prod_norms = Fraction(1)
    for n in p.ideal_norms:
        prod_norms *= n
    return (Fraction(1, 4) ** (p.s * p.r2)) * Fraction(abs(p.disc)) ** p.s * prod_norms ** 2


def naive_form_det_sq(p: ModuleProvenance) -> Fraction:
    """The same expression written through the module discriminant; for
    rank s >= 2 with nontrivial ideal norms it differs from the closed form
    and is reported for comparison only."""
    return (Fraction(1, 4) ** (p.s * p.r2)) * abs(p.module_disc) ** p.s


@dataclass
class DeterminantReport:
    det: Enclosure
    det_sq: Fraction
    closed_form_sq: Fraction
    naive_form_sq: Fraction
    closed_match: bool
    naive_match: bool


def determinant_report(lattice: EmbeddedLattice, bits: int = 64) -> DeterminantReport:
    if lattice.provenance is None:
        raise ValidationError("lattice carries no module provenance")
    closed = closed_form_det_sq(lattice.provenance)
    naive = naive_form_det_sq(lattice.provenance)
    return DeterminantReport(
        det=lattice.determinant_enclosure(bits),
        det_sq=lattice.gram_det,
        closed_form_sq=closed,
        naive_form_sq=naive,
        closed_match=lattice.gram_det == closed,
        naive_match=lattice.gram_det == naive)


class DenominatorIdeal:
    """The fractional ideal of all q in K with q * M inside O_K^w."""

    def __init__(self, module: ModuleM):
        K = module.K
        self.K = K
        self.module = module
        d = K.degree
        coords_of_interest: list[KElement] = []
        for g in module.generators():
            for c in g:
                if any(c):
                    coords_of_interest.append(c)
        if not coords_of_interest:
            raise ValidationError("zero module")
        # q*g integral for all generator coordinates g; each condition is
        # q in M_g^{-1}(O_K) in integral-basis coordinates
        lattices = []
        denominator = 1
        inv_bases = []
        for g in coords_of_interest:
            cols = []
            for omega in K.integral_basis:
                cols.append(K.to_integral_coords(K.mul(g, omega)))
            m_g = [[cols[j][i] for j in range(d)] for i in range(d)]
            inv = rational_inverse(m_g)
            assert inv is not None
            inv_bases.append(inv)
            for row in inv:
                for v in row:
                    if v.denominator != 1:
                        denominator = denominator * v.denominator // \
                            math.gcd(denominator, v.denominator)
        for inv in inv_bases:
            cols = [[int(inv[i][j] * denominator) for i in range(d)] for j in range(d)]
            lattices.append(Sublattice(cols))
        acc = lattices[0]
        for lat in lattices[1:]:
            acc = acc.intersect(lat)
        # columns of the canonical form, scaled back by the common denominator
        self.zbasis: list[KElement] = []
        for j in range(d):
            coords = [Fraction(acc.hnf[i][j], denominator) for i in range(d)]
            elem = K.zero
            for c, omega in zip(coords, K.integral_basis):
                elem = K.add(elem, K.scale(omega, c))
            self.zbasis.append(elem)
        self._basis_coords = [[Fraction(acc.hnf[i][j], denominator) for i in range(d)]
                              for j in range(d)]
        matrix = [[self._basis_coords[j][i] for j in range(d)] for i in range(d)]
        self._coords_inv = rational_inverse(matrix)
        assert self._coords_inv is not None
        for u in self.zbasis:
            for g in coords_of_interest:
                assert K.is_integral(K.mul(u, g)), "denominator ideal inconsistency"

    def contains(self, a: KElement) -> bool:
        target = self.K.to_integral_coords(a)
        d = self.K.degree
        sol = [sum(self._coords_inv[i][j] * target[j] for j in range(d))
               for i in range(d)]
        return all(c.denominator == 1 for c in sol)

    def embedded(self) -> EmbeddedLattice:
        cols = [self.K.minkowski_embed([u]) for u in self.zbasis]
        return EmbeddedLattice(self.K.ambient, cols)

    def candidates(self, cap: int = 200) -> list[KElement]:
        """The first ``cap`` nonzero elements in lattice enumeration order,
        with the unit 1 prepended whenever it belongs to the ideal."""
        lat = self.embedded()
        radius = max(pt_norm_upper(lat, j) for j in range(len(self.zbasis)))
        pts: list = []
        while True:
            pts = points_within(lat, radius, exclude_zero=True)
            if len(pts) >= cap:
                break
            radius *= 2
        out: list[KElement] = []
        for pt in pts[:cap]:
            elem = self.K.zero
            for c, u in zip(pt.coeffs, self.zbasis):
                if c:
                    elem = self.K.add(elem, self.K.scale(u, c))
            out.append(elem)
        if self.contains(self.K.one) and self.K.one not in out:
            out.insert(0, self.K.one)
        return out


def pt_norm_upper(lattice: EmbeddedLattice, j: int) -> Fraction:
    return NormValue(supnorm_element(lattice.columns[j])).interval(32).hi


@dataclass
class ComplexityMinimum:
    alpha: KElement
    value: Enclosure
    height: HeightEnclosure
    inv_height: HeightEnclosure
    considered: int


def complexity_minimum(module: ModuleM, kappa: int, sd: int,
                       cap: int = 200, bits: int = 64) -> ComplexityMinimum:
    """Minimize h(a)^((kappa+1)sd-1) * h(a^-1)^kappa over denominator-ideal
    elements, by certified upper bound, ties broken by enumeration order.

    The reported value is attained by a concrete element, so it is a valid
    (if not always optimal) substitute for the true minimum in every bound
    that is monotone in it.
    """
    if kappa < 1 or sd < 1:
        raise ValidationError("exponent parameters must be positive")
    e1 = (kappa + 1) * sd - 1
    e2 = kappa
    ideal = DenominatorIdeal(module)
    best: tuple | None = None
    cands = ideal.candidates(cap)
    for rank, alpha in enumerate(cands):
        mp = module.K.minimal_polynomial(alpha)
        h = HeightEnclosure(mp)
        hinv = h.inverse_height()
        value = h.pow_enclosure(e1, bits) * hinv.pow_enclosure(e2, bits)
        key = (value.hi, rank)
        if best is None or key < best[0]:
            best = (key, alpha, value, h, hinv)
    assert best is not None
    return ComplexityMinimum(alpha=best[1], value=best[2], height=best[3],
                             inv_height=best[4], considered=len(cands))
