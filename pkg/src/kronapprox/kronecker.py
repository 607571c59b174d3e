"""Simultaneous-approximation core: separation constants, the certified
integer search, and the two end-to-end solvers with bound calculators.

Everything here is exact or safe-side:

* theta values are field elements, so independence, minimal polynomials,
  and residual signs are decided exactly;
* the Liouville-type separation constant C1 is an enclosure with an exact
  fast path whenever the Mahler measures involved are rational;
* the integer search certifies every accepted residual strictly below the
  tolerance and every rejection strictly above it, falling back from
  intervals to exact sign computations;
* bound formulas are assembled factor by factor as enclosures, and solver
  outputs are checked against them before a certificate is issued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .avoidance import (PRECISION_CAP_BITS, PolySystemSet, certify_nonzero,
                        grid_avoid, grid_norm_bound, norm_leq,
                        select_product_poly, sublattice_avoid, sublattice_bound)
from .certificate import Certificate
from .errors import (BoundaryIndeterminate, BoundViolation, CapExceeded,
                     HashMismatch, IndependenceError, NonIntegerDPrime,
                     PrecisionCapExceeded, SearchExhausted, ValidationError,
                     ZeroTheta)
from .field import FieldDescriptor, FieldElement
from .heights import HeightEnclosure, VectorHeight
from .intervals import DyadicInterval, Enclosure, pow2_enclosure, rational_power
from .lattices import (EmbeddedLattice, MinimaResult, NormValue, Sublattice,
                       points_within, successive_minima, supnorm_element)
from .modules import (ComplexityMinimum, DenominatorIdeal, DeterminantReport,
                      build_lattice, complexity_minimum, determinant_report)
from .problem import MODE_POLYNOMIALS, MODE_SUBLATTICES, Problem
from .subfield import KElement, SubfieldK

# -- linear forms ---------------------------------------------------------------


class FormMatrix:
    """A t x (w*d) matrix of real algebraic numbers, the linear forms."""

    def __init__(self, field: FieldDescriptor, rows: Sequence[Sequence[FieldElement]]):
        self.field = field
        self.rows: tuple[tuple[FieldElement, ...], ...] = tuple(
            tuple(entry for entry in row) for row in rows)
        if not self.rows:
            raise ValidationError("need at least one form row")
        self.t = len(self.rows)
        self.wd = len(self.rows[0])
        if self.wd < 1 or any(len(r) != self.wd for r in self.rows):
            raise ValidationError("form rows must all have the same positive length")
        for row in self.rows:
            for entry in row:
                if entry.field is not field:
                    raise ValidationError("form entries must live in the ambient field")
        entries = [e for row in self.rows for e in row]
        self.height = VectorHeight(entries)
        self.row_heights = [VectorHeight(list(row)) for row in self.rows]
        # a row height can never exceed the full matrix height; a certified
        # violation means corrupted height data
        top = self.height.enclosure(48)
        for i, rh in enumerate(self.row_heights):
            if rh.enclosure(48).lo > top.hi:
                raise BoundViolation(f"row {i} height exceeds the matrix height")

    def apply(self, point: Sequence[FieldElement]) -> list[FieldElement]:
        """The form values at a point: theta_i = sum_j b_ij * point_j."""
        if len(point) != self.wd:
            raise ValidationError(f"expected {self.wd} coordinates")
        out = []
        for row in self.rows:
            acc = self.field.zero
            for b, x in zip(row, point):
                if x:
                    acc = acc + b * x
            out.append(acc)
        return out


# -- exact rational spans and subfield degrees ----------------------------------


class _QSpan:
    """Row space over Q with incremental exact rank."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot index, row)

    def add(self, vec: Sequence[Fraction]) -> bool:
        v = [Fraction(c) for c in vec]
        for piv, row in self.rows:
            if v[piv]:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, row)]
        for i, c in enumerate(v):
            if c:
                inv = 1 / c
                self.rows.append((i, [a * inv for a in v]))
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)


def subalgebra_basis(field: FieldDescriptor, generators: Sequence[FieldElement]) -> list[FieldElement]:
    """A Q-basis of the subfield generated by the given elements.

    Closure of the span of 1 under multiplication by the generators; a
    finite-dimensional subalgebra of a field is itself a field, so the
    result spans Q(generators) and its length is the exact degree.
    """
    gens = [g for g in generators if g]
    span = _QSpan()
    basis: list[FieldElement] = []

    def absorb(e: FieldElement) -> bool:
        if span.add(e.coords):
            basis.append(e)
            return True
        return False

    absorb(field.one)
    frontier = list(basis)
    while frontier:
        fresh = []
        for b in frontier:
            for g in gens:
                cand = b * g
                if absorb(cand):
                    fresh.append(cand)
        frontier = fresh
    return basis


def coefficient_field_basis(lattice: EmbeddedLattice, K: SubfieldK) -> list[FieldElement]:
    """Q-basis of K1, the field generated by the embedded lattice entries
    together with every embedding image of the coefficient field."""
    gens: list[FieldElement] = []
    for col in lattice.columns:
        gens.extend(col)
    for img in K.real_images:
        gens.append(img)
    for z in K.complex_images:
        gens.append(z.re)
        gens.append(z.im)
    return subalgebra_basis(lattice.field, gens)


def independence_check(B: FormMatrix, k1_basis: Sequence[FieldElement]) -> bool:
    """Whether 1 and the form entries are linearly independent over K1.

    A K1-subspace of the ambient field has Q-dimension equal to its
    K1-dimension times [K1:Q], so independence holds exactly when the
    products {kappa_u * beta_v} have full rational rank.
    """
    entries = [e for row in B.rows for e in row]
    span = _QSpan()
    count = 0
    for kappa in k1_basis:
        for beta in [B.field.one] + entries:
            if span.add((kappa * beta).coords):
                count += 1
    return count == (len(entries) + 1) * len(k1_basis)


# -- theta systems and their separation constant --------------------------------


def _max_enclosure(values: Sequence[Enclosure]) -> Enclosure:
    iv = values[0].interval
    for v in values[1:]:
        iv = iv.max_with(v.interval)
    exacts = [v.exact for v in values]
    if all(x is not None for x in exacts):
        return Enclosure(iv, max(x for x in exacts if x is not None))
    return Enclosure.of_interval(iv)


@dataclass(frozen=True)
class ThetaSystem:
    """The approximated numbers with their exact algebraic data."""

    field: FieldDescriptor
    thetas: tuple[FieldElement, ...]
    minpolys: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    e: int
    heights: tuple[HeightEnclosure, ...]
    lead_lcm: int
    c1: Enclosure

    @property
    def t(self) -> int:
        return len(self.thetas)

    @classmethod
    def build(cls, thetas: Sequence[FieldElement], bits: int = 96) -> "ThetaSystem":
        elems = list(thetas)
        if not elems:
            raise ValidationError("need at least one theta")
        field = elems[0].field
        for i, th in enumerate(elems):
            if not th:
                raise ZeroTheta(f"theta_{i + 1} is zero; a form vanishes on the witness")
        span = _QSpan()
        span.add(field.one.coords)
        for i, th in enumerate(elems):
            if not span.add(th.coords):
                raise IndependenceError(
                    f"1, theta_1, ..., theta_{i + 1} are rationally dependent")
        minpolys = tuple(th.minimal_polynomial() for th in elems)
        degrees = tuple(len(mp) - 1 for mp in minpolys)
        e = _subfield_degree(field, elems, degrees)
        t = len(elems)
        if e < t + 1:
            raise IndependenceError(
                f"degree of Q(theta) is {e} < t + 1 = {t + 1}")
        for d in degrees:
            if e % d:
                raise BoundViolation(
                    f"component degree {d} does not divide the field degree {e}")
        heights = tuple(HeightEnclosure(mp) for mp in minpolys)
        lead_lcm = 1
        for mp in minpolys:
            lead_lcm = lead_lcm * abs(mp[-1]) // math.gcd(lead_lcm, abs(mp[-1]))
        _check_coefficient_sandwich(minpolys, degrees, heights, lead_lcm, bits)
        c1 = _c1_constant(t, e, degrees, heights, bits)
        return cls(field=field, thetas=tuple(elems), minpolys=minpolys,
                   degrees=degrees, e=e, heights=heights, lead_lcm=lead_lcm,
                   c1=c1)

    def max_height(self):
        """Height cap over the thetas: the single height enclosure when t = 1
        (it keeps exact powers available), otherwise an interval maximum."""
        if len(self.heights) == 1:
            return self.heights[0]
        return _max_enclosure([Enclosure.of_interval(h.height_interval(96))
                               for h in self.heights])

    def liouville_lower(self, m: Sequence[int]) -> "LiouvilleWitness":
        """Certified lower bound C1^-1 |m|^(1-e) for the distance of
        m . theta to the nearest integer, with the actual distance."""
        ms = [int(v) for v in m]
        if len(ms) != self.t:
            raise ValidationError(f"expected {self.t} integer coefficients")
        if not any(ms):
            raise ValidationError("m must be nonzero")
        value = self.field.zero
        for c, th in zip(ms, self.thetas):
            if c:
                value = value + th * c
        p, r = nearest_residual(value)
        norm = max(abs(v) for v in ms)
        lower = Enclosure.of(1) / (self.c1 * Enclosure.of(Fraction(norm) ** (self.e - 1)))
        bits = 64
        riv = r.evaluate(bits).abs()
        while bits <= PRECISION_CAP_BITS:
            riv = r.evaluate(bits).abs()
            if riv.lo > lower.hi or riv.hi < lower.lo:
                break
            bits *= 2
        return LiouvilleWitness(lower=lower, actual=Enclosure.of_interval(riv),
                                nearest=p, certified=riv.lo > lower.hi)


@dataclass(frozen=True)
class LiouvilleWitness:
    lower: Enclosure
    actual: Enclosure
    nearest: int
    certified: bool


def _subfield_degree(field: FieldDescriptor, elems: list[FieldElement],
                     degrees: tuple[int, ...]) -> int:
    """[Q(theta_1, ..., theta_t) : Q], exactly.

    Fast path: a single theta, or an integer combination whose minimal
    polynomial already reaches the product of the component degrees (the
    a-priori maximum).  Otherwise the exact dimension of the monomial span.
    """
    if len(elems) == 1:
        return degrees[0]
    prod_d = 1
    for d in degrees:
        prod_d *= d
    combo = field.zero
    weight = 1
    for th in elems:
        combo = combo + th * weight
        weight *= 2
    if combo.algebraic_degree() == prod_d:
        return prod_d
    return len(subalgebra_basis(field, elems))


def _check_coefficient_sandwich(minpolys, degrees, heights, lead_lcm: int,
                                bits: int) -> None:
    """Safe-side consistency between coefficient sizes and heights:
    |f| <= (2 h)^d, h^d <= sqrt(d+1) |f|, and lcm(lead) <= prod (2h)^d."""
    rhs_all = Enclosure.of(1)
    for mp, d, h in zip(minpolys, degrees, heights):
        size = Fraction(max(abs(c) for c in mp))
        mahler = h.pow_enclosure(d, bits)
        if mahler.hi * 2 ** d < size:
            raise BoundViolation(
                f"height data inconsistent: (2h)^{d} certified below |f| = {size}")
        if mahler.lo > 0 and mahler.lo ** 2 > (d + 1) * size ** 2:
            raise BoundViolation(
                f"height data inconsistent: h^{d} certified above sqrt({d + 1})|f|")
        rhs_all = rhs_all * Enclosure.of(Fraction(2 ** d)) * mahler
    if rhs_all.hi < lead_lcm:
        raise BoundViolation(
            f"leading-coefficient lcm {lead_lcm} certified above its cap")


def _c1_constant(t: int, e: int, degrees, heights, bits: int) -> Enclosure:
    """C1 = ((t+1) max_j h_j^{d_j})^{e-1} * prod_j (2 h_j)^{e d_j}.

    h_j^{d_j} is the Mahler measure of the j-th minimal polynomial, so the
    whole constant is exact whenever every Mahler measure is."""
    mahlers = [h.pow_enclosure(d, bits) for h, d in zip(heights, degrees)]
    term = (Enclosure.of(t + 1) * _max_enclosure(mahlers)) ** (e - 1)
    for h, d in zip(heights, degrees):
        term = term * Enclosure.of(Fraction(2 ** (e * d))) * h.pow_enclosure(e * d, bits)
    return term


# -- certified nearest-integer residuals -----------------------------------------


def _nearest_int(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def nearest_residual(value: FieldElement) -> tuple[int, FieldElement]:
    """The nearest integer p to an exact real value and the exact residual
    value - p.  Rational values are handled directly; irrational values by
    interval refinement, which terminates because they are never half-integers."""
    if value.is_rational():
        p = _nearest_int(value.as_fraction())
        return p, value - p
    bits = 32
    while bits <= PRECISION_CAP_BITS:
        iv = value.evaluate(bits)
        plo = _nearest_int(iv.lo)
        phi = _nearest_int(iv.hi)
        if plo == phi:
            return plo, value - plo
        bits *= 2
    raise PrecisionCapExceeded("nearest integer undecided at the precision cap")


def _dist_to_z(iv: DyadicInterval) -> DyadicInterval:
    """Enclosure of distance-to-nearest-integer over an interval."""
    def d(x: Fraction) -> Fraction:
        fr = x - math.floor(x)
        return min(fr, 1 - fr)

    if math.floor(iv.hi) >= math.ceil(iv.lo):
        lo = Fraction(0)
    else:
        lo = min(d(iv.lo), d(iv.hi))
    half = Fraction(1, 2)
    if math.floor(iv.hi - half) >= math.ceil(iv.lo - half):
        hi = half
    else:
        hi = max(d(iv.lo), d(iv.hi))
    return DyadicInterval(lo, hi)


def certify_strict_less(residual: FieldElement, epsilon: Fraction) -> bool:
    """Whether |residual| < epsilon, decided exactly.

    Two interval rounds, then the exact sign of residual^2 - epsilon^2.
    Exact equality is a boundary case the caller cannot distinguish from
    either side, so it is reported as such."""
    bits = 48
    for _ in range(2):
        iv = residual.evaluate(bits).abs()
        if iv.hi < epsilon:
            return True
        if iv.lo > epsilon:
            return False
        bits *= 2
    sign = (residual * residual - epsilon * epsilon).sign()
    if sign < 0:
        return True
    if sign > 0:
        return False
    raise BoundaryIndeterminate(
        "a residual equals the tolerance exactly; perturb epsilon")


# -- the effective search and its bounds ------------------------------------------


def _eps_factor(epsilon: Fraction, exponent_degree: int) -> Fraction:
    # epsilon^(-(k - 1)), the tolerance scaling factor
    return epsilon ** (-(exponent_degree - 1)) if exponent_degree > 1 else Fraction(1)


def _sharp_bound(t: int, e: int, c1: Enclosure, epsilon: Fraction) -> Enclosure:
    factor = Fraction(math.factorial(t + 1)) ** (2 * e) / Fraction(2) ** (e * t)
    return Enclosure.of(factor) * c1 * Enclosure.of(_eps_factor(epsilon, e))


@dataclass(frozen=True)
class KrBound:
    kappa: int
    simplified: Enclosure
    sharp: Enclosure | None = None


def kr_bound(t: int, ell: int, height_cap, epsilon: Fraction,
             e: int | None = None, c1: Enclosure | None = None,
             bits: int = 96) -> KrBound:
    """Guaranteed search radius for the simultaneous approximation integer.

    Simplified form 2^(l t (l-1)) (t+1)^(3l-1) (t!)^(2l) H^kappa eps^(1-l)
    with kappa = l^2 (t+1) - l, for any height cap H and degree cap l; the
    sharp form 2^(-e t) ((t+1)!)^(2e) C1 eps^(1-e) when e and C1 are known.
    """
    if epsilon <= 0:
        raise ValidationError("epsilon must be positive")
    if ell < 1:
        raise ValidationError("ell must be positive")
    if e is not None and ell < e:
        raise ValidationError(f"ell = {ell} is below the field degree e = {e}")
    kappa = ell * ell * (t + 1) - ell
    if isinstance(height_cap, HeightEnclosure):
        h_pow = height_cap.pow_enclosure(kappa, bits)
    elif isinstance(height_cap, Enclosure):
        h_pow = height_cap ** kappa
    else:
        h_pow = Enclosure.of(Fraction(height_cap)) ** kappa
    front = Fraction(2) ** (ell * t * (ell - 1)) \
        * Fraction(t + 1) ** (3 * ell - 1) \
        * Fraction(math.factorial(t)) ** (2 * ell)
    simplified = Enclosure.of(front) * h_pow * Enclosure.of(_eps_factor(epsilon, ell))
    sharp = None
    if e is not None and c1 is not None:
        sharp = _sharp_bound(t, e, c1, epsilon)
    return KrBound(kappa=kappa, simplified=simplified, sharp=sharp)


@dataclass(frozen=True)
class KrResult:
    q: int
    p: tuple[int, ...]
    residuals: tuple[Enclosure, ...]
    searched: int
    cap: int


def _q_order(cap: int, include_zero: bool):
    if include_zero:
        yield 0
    for k in range(1, cap + 1):
        yield k
        yield -k


def _coerce_targets(field: FieldDescriptor, targets) -> list[FieldElement]:
    out = []
    for v in targets:
        if isinstance(v, FieldElement):
            if v.field is not field:
                raise ValidationError("target lives in a different field")
            out.append(v)
        else:
            out.append(field.from_rational(Fraction(v)))
    return out


def _try_candidate(system: ThetaSystem, targets: list[FieldElement], q: int,
                   epsilon: Fraction):
    ps: list[int] = []
    rs: list[FieldElement] = []
    for theta, target in zip(system.thetas, targets):
        value = theta * q - target
        if not value.is_rational():
            dist = _dist_to_z(value.evaluate(48))
            if dist.lo > epsilon:
                return None
        p, r = nearest_residual(value)
        if not certify_strict_less(r, epsilon):
            return None
        ps.append(p)
        rs.append(r)
    return ps, rs


def kr_search(system: ThetaSystem, targets, epsilon: Fraction,
              q_max: int | None = None, include_zero: bool = False) -> KrResult:
    """Smallest-magnitude integer q (positive before negative at ties, zero
    first when admitted) with every |q theta_j - target_j| strictly within
    epsilon of an integer, all residuals certified."""
    if epsilon <= 0:
        raise ValidationError("epsilon must be positive")
    elems = _coerce_targets(system.field, targets)
    if len(elems) != system.t:
        raise ValidationError(f"expected {system.t} targets")
    if q_max is None:
        q_max = max(1, math.ceil(_sharp_bound(system.t, system.e, system.c1,
                                              epsilon).hi))
    if q_max < 1:
        raise ValidationError("q_max must be at least 1")
    searched = 0
    for q in _q_order(q_max, include_zero):
        searched += 1
        hit = _try_candidate(system, elems, q, epsilon)
        if hit is not None:
            ps, rs = hit
            residuals = tuple(Enclosure.of_interval(r.evaluate(96)) for r in rs)
            return KrResult(q=q, p=tuple(ps), residuals=residuals,
                            searched=searched, cap=q_max)
    raise SearchExhausted(
        f"no solution with |q| <= {q_max}; if the cap is at least the "
        "guaranteed bound this indicates a boundary tolerance")


def oracle_min_q(system: ThetaSystem, targets, epsilon: Fraction, cap: int,
                 include_zero: bool = False) -> int:
    """Independent brute-force minimum |q|, same ordering as the search but
    with direct evaluation and exact sign decisions only."""
    if cap < 1:
        raise ValidationError("cap must be at least 1")
    elems = _coerce_targets(system.field, targets)
    for q in _q_order(cap, include_zero):
        good = True
        for theta, target in zip(system.thetas, elems):
            value = theta * q - target
            p, r = nearest_residual(value)
            sign = (r * r - epsilon * epsilon).sign()
            if sign >= 0:
                good = False
                break
        if good:
            return q
    raise CapExceeded(f"no solution with |q| <= {cap}")


# -- bound calculators -------------------------------------------------------------


@dataclass(frozen=True)
class Theorem1Bound:
    """The displayed solution-size bound, factor by factor."""

    kappa: int
    eps_exponent: int
    a_const: Enclosure      # 2^(lt(l-1) + s r1 kappa + (sd-1)/2) (t+1)^(3l-1) (t!)^(2l)
    base_factor: Enclosure  # (sd M |disc|^(s/2))^(kappa+1)
    form_factor: Enclosure  # ((wd)^(3/2) h(B))^kappa
    complexity: Enclosure   # min over candidates of h(a)^((kappa+1)sd-1) h(1/a)^kappa
    eps_factor: Fraction
    prefactor: Enclosure
    total: Enclosure
    simplified_kernel: Enclosure  # det^(kappa+1) h(B)^kappa complexity eps-factor

    def components(self) -> dict:
        return {"kappa": self.kappa, "eps_exponent": self.eps_exponent,
                "a_const": self.a_const, "base_factor": self.base_factor,
                "form_factor": self.form_factor, "complexity": self.complexity,
                "eps_factor": self.eps_factor,
                "simplified_kernel": self.simplified_kernel}


def bound_theorem1(module, lattice: EmbeddedLattice, form_height: VectorHeight,
                   t: int, ell: int, m_s: int, epsilon: Fraction,
                   complexity: Enclosure, bits: int = 96) -> Theorem1Bound:
    K = module.K
    s, d, r1, w = module.s, K.degree, K.r1, module.w
    sd, wd = s * d, w * d
    kappa = ell * ell * (t + 1) - ell
    exp2 = Fraction(ell * t * (ell - 1) + s * r1 * kappa) + Fraction(sd - 1, 2)
    tail = Fraction(t + 1) ** (3 * ell - 1) * Fraction(math.factorial(t)) ** (2 * ell)
    a_const = pow2_enclosure(exp2, bits) * Enclosure.of(tail)
    disc_half = rational_power(abs(module.discriminant()), Fraction(s, 2), bits)
    base_factor = (Enclosure.of(sd * m_s) * disc_half) ** (kappa + 1)
    form_factor = rational_power(wd, Fraction(3 * kappa, 2), bits) \
        * form_height.pow_enclosure(kappa, bits)
    eps_factor = _eps_factor(epsilon, ell)
    prefactor = a_const * base_factor * form_factor * complexity
    total = prefactor * Enclosure.of(eps_factor)
    det = lattice.determinant_enclosure(bits)
    simplified_kernel = det ** (kappa + 1) * form_height.pow_enclosure(kappa, bits) \
        * complexity * Enclosure.of(eps_factor)
    return Theorem1Bound(kappa=kappa, eps_exponent=ell - 1, a_const=a_const,
                         base_factor=base_factor, form_factor=form_factor,
                         complexity=complexity, eps_factor=eps_factor,
                         prefactor=prefactor, total=total,
                         simplified_kernel=simplified_kernel)


@dataclass(frozen=True)
class Theorem2Bound:
    """The sublattice-avoidance solution-size bound, factor by factor."""

    kappa: int
    eps_exponent: int
    b_const: Enclosure       # 2^(lt(l-1) + kappa/2 + s m r2) (t+1)^(3l-1) (t!)^(2l) (wd)^(3kappa/2)
    e_alpha: Enclosure       # 2^((s r1 - 1)/2) h(a)^(sd-1) |disc|^(s/2) (sum - m + 1) + D^(1/sd)
    sum_term: Enclosure
    capacity: Enclosure      # D^(1/sd)
    d_total: Enclosure       # D = prod of sublattice determinants
    product_factor: Enclosure  # (h(a) h(1/a) h(B) E_a)^kappa
    disc_power: Enclosure    # |disc|^(s m / 2)
    eps_factor: Fraction
    g_cap: Enclosure         # guaranteed search radius for g
    total: Enclosure

    def components(self) -> dict:
        return {"kappa": self.kappa, "eps_exponent": self.eps_exponent,
                "b_const": self.b_const, "e_alpha": self.e_alpha,
                "sum_term": self.sum_term, "capacity": self.capacity,
                "d_total": self.d_total, "product_factor": self.product_factor,
                "disc_power": self.disc_power, "eps_factor": self.eps_factor,
                "g_cap": self.g_cap}


def bound_theorem2(module, lattice: EmbeddedLattice, indices: Sequence[int],
                   form_height: VectorHeight, t: int, ell: int,
                   epsilon: Fraction, alpha_height: HeightEnclosure,
                   alpha_inv_height: HeightEnclosure, bits: int = 96) -> Theorem2Bound:
    K = module.K
    s, d, r1, r2, w = module.s, K.degree, K.r1, K.r2, module.w
    sd, wd = s * d, w * d
    m = len(indices)
    kappa = ell * ell * (t + 1) - ell
    det = lattice.determinant_enclosure(bits)
    d_values = [Enclosure.of(idx) * det for idx in indices]
    d_total = Enclosure.of(1)
    for dv in d_values:
        d_total = d_total * dv
    sum_ratios = Enclosure.of(0)
    for i in range(m):
        ratio = Enclosure.of(1)
        for j in range(m):
            if j != i:
                ratio = ratio * d_values[j]
        sum_ratios = sum_ratios + ratio
    sum_term = sum_ratios + Enclosure.of(1 - m)
    disc_half = rational_power(abs(module.discriminant()), Fraction(s, 2), bits)
    capacity = d_total.nth_root(sd, bits)
    e_alpha = pow2_enclosure(Fraction(s * r1 - 1, 2), bits) \
        * alpha_height.pow_enclosure(sd - 1, bits) * disc_half * sum_term + capacity
    tail = Fraction(t + 1) ** (3 * ell - 1) * Fraction(math.factorial(t)) ** (2 * ell)
    b_const = pow2_enclosure(Fraction(ell * t * (ell - 1) + s * m * r2)
                             + Fraction(kappa, 2), bits) \
        * Enclosure.of(tail) * rational_power(wd, Fraction(3 * kappa, 2), bits)
    product_factor = alpha_height.pow_enclosure(kappa, bits) \
        * alpha_inv_height.pow_enclosure(kappa, bits) \
        * form_height.pow_enclosure(kappa, bits) * e_alpha ** kappa
    disc_power = rational_power(abs(module.discriminant()), Fraction(s * m, 2), bits)
    eps_factor = _eps_factor(epsilon, ell)
    main = b_const * product_factor * d_total * Enclosure.of(eps_factor) / disc_power
    total = (main + Enclosure.of(1)) * e_alpha
    g_front = Fraction(2) ** (ell * t * (ell - 1)) * tail
    g_cap = Enclosure.of(g_front) * rational_power(wd, Fraction(3 * kappa, 2), bits) \
        * pow2_enclosure(Fraction(kappa, 2), bits) * product_factor \
        * Enclosure.of(eps_factor)
    return Theorem2Bound(kappa=kappa, eps_exponent=ell - 1, b_const=b_const,
                         e_alpha=e_alpha, sum_term=sum_term, capacity=capacity,
                         d_total=d_total, product_factor=product_factor,
                         disc_power=disc_power, eps_factor=eps_factor,
                         g_cap=g_cap, total=total)


def theta_height_cap_theorem1(module, lattice: EmbeddedLattice, m_s: int,
                              alpha_height: HeightEnclosure,
                              alpha_inv_height: HeightEnclosure,
                              form_height: VectorHeight, bits: int = 96) -> Enclosure:
    """Closed-form cap 2^(sd/2) sd (wd)^(3/2) M h(a)^sd h(1/a) det h(B) for
    the heights of form values at the grid witness."""
    K = module.K
    sd = module.s * K.degree
    wd = module.w * K.degree
    return pow2_enclosure(Fraction(sd, 2), bits) * Enclosure.of(sd * m_s) \
        * rational_power(wd, Fraction(3, 2), bits) \
        * alpha_height.pow_enclosure(sd, bits) \
        * alpha_inv_height.pow_enclosure(1, bits) \
        * lattice.determinant_enclosure(bits) * form_height.enclosure(bits)


def theta_height_cap_theorem2(lattice: EmbeddedLattice, indices: Sequence[int],
                              alpha_height: HeightEnclosure,
                              alpha_inv_height: HeightEnclosure,
                              form_height: VectorHeight, bits: int = 96) -> Enclosure:
    """Closed-form cap (wd)^(3/2) sqrt(2) h(a) h(1/a) h(B) times the
    avoidance radius, for form values at the sublattice witness."""
    wd = lattice.dim
    radius = sublattice_bound(lattice, indices, alpha_height, bits).total
    return rational_power(wd, Fraction(3, 2), bits) \
        * pow2_enclosure(Fraction(1, 2), bits) \
        * alpha_height.pow_enclosure(1, bits) \
        * alpha_inv_height.pow_enclosure(1, bits) \
        * form_height.enclosure(bits) * radius


def _height_not_above(h: HeightEnclosure, cap: Enclosure, bits: int = 96) -> bool:
    """Safe-side: false only when the height certainly exceeds the cap."""
    for b in (bits, 4 * bits):
        iv = h.height_interval(b)
        if iv.hi <= cap.lo:
            return True
        if iv.lo > cap.hi:
            return False
    return True


# -- pipelines ---------------------------------------------------------------------


@dataclass
class Prepared:
    """Shared first stage of solving and verification."""

    problem: Problem
    lattice: EmbeddedLattice
    det_report: DeterminantReport
    forms: FormMatrix
    k1: list[FieldElement]
    independent: bool
    ell_computed: int
    ell: int
    kappa: int


def prepare(problem: Problem) -> Prepared:
    lattice = build_lattice(problem.module)
    forms = FormMatrix(problem.field, problem.form_rows)
    if forms.wd != lattice.dim:
        raise ValidationError(
            f"forms have {forms.wd} columns but the embedded dimension is {lattice.dim}")
    k1 = coefficient_field_basis(lattice, problem.subfield)
    independent = independence_check(forms, k1)
    gens = list(k1) + [e for row in forms.rows for e in row]
    ell_computed = len(subalgebra_basis(problem.field, gens))
    ell = problem.options.ell if problem.options.ell is not None else ell_computed
    kappa = ell * ell * (forms.t + 1) - ell
    return Prepared(problem=problem, lattice=lattice,
                    det_report=determinant_report(lattice), forms=forms, k1=k1,
                    independent=independent, ell_computed=ell_computed,
                    ell=ell, kappa=kappa)


def _require_degrees(system: ThetaSystem, ell: int) -> None:
    if system.e > ell or any(d > ell for d in system.degrees):
        raise ValidationError(
            f"computed degrees e = {system.e}, d = {list(system.degrees)} exceed "
            f"ell = {ell}; the form values cannot lie in the declared field, "
            "so the problem file is inconsistent")


def _search_cap(problem: Problem, *bounds: Enclosure) -> int:
    if problem.options.search_cap is not None:
        return problem.options.search_cap
    return max(1, min(math.ceil(b.hi) for b in bounds))


def _check_solution_norm(norm: NormValue, bound_fn: Callable[[int], Enclosure],
                         what: str) -> None:
    if not norm_leq(norm, bound_fn):
        raise BoundViolation(f"{what} exceeds its guaranteed bound")


def _residual_report(kr: KrResult) -> list[Enclosure]:
    return list(kr.residuals)


def solve_theorem1(problem: Problem) -> Certificate:
    """Full pipeline for polynomial avoidance: witness, form values,
    integer search, bound check, certificate."""
    if problem.mode != MODE_POLYNOMIALS:
        raise ValidationError("this solver needs polynomial avoidance data")
    ws = prepare(problem)
    if not ws.independent:
        raise IndependenceError(
            "1 and the form entries are linearly dependent over the "
            "coefficient-generated field")
    assert problem.systems is not None
    lattice, forms = ws.lattice, ws.forms
    sd = lattice.rank
    minima = successive_minima(lattice)
    comp = complexity_minimum(problem.module, ws.kappa, sd,
                              cap=problem.options.candidate_cap)
    chosen = select_product_poly(problem.systems, lattice, minima)
    witness = grid_avoid(problem.systems, lattice, minima, comp.height, chosen)
    system = ThetaSystem.build(forms.apply(witness.y_embedded))
    _require_degrees(system, ws.ell)
    alpha_inv = comp.inv_height
    theta_cap = theta_height_cap_theorem1(problem.module, lattice,
                                          problem.systems.grid_degree,
                                          comp.height, alpha_inv, forms.height)
    for i, h in enumerate(system.heights):
        if not _height_not_above(h, theta_cap):
            raise BoundViolation(
                f"h(theta_{i + 1}) certified above its closed-form cap")
    bounds = kr_bound(forms.t, ws.ell, system.max_height(), problem.epsilon,
                      e=system.e, c1=system.c1)
    assert bounds.sharp is not None
    cap = _search_cap(problem, bounds.simplified, bounds.sharp)
    kr = kr_search(system, problem.a, problem.epsilon, cap)
    x_embedded = [v * kr.q for v in witness.y_embedded]
    x_coords = tuple(c * kr.q for c in witness.y_coords)
    if problem.systems.member(x_embedded):
        raise BoundViolation("scaled witness landed inside the avoided set")
    x_certs = []
    for i, (j, poly) in enumerate(chosen):
        iv, bits = certify_nonzero(poly.eval_field(x_embedded))
        x_certs.append({"system": i, "poly": j, "interval": iv, "bits": bits})
    x_norm = NormValue(supnorm_element(x_embedded))
    b1 = bound_theorem1(problem.module, lattice, forms.height, forms.t, ws.ell,
                        problem.systems.grid_degree, problem.epsilon, comp.value)
    _check_solution_norm(
        x_norm,
        lambda bits: bound_theorem1(problem.module, lattice, forms.height,
                                    forms.t, ws.ell, problem.systems.grid_degree,
                                    problem.epsilon, comp.value, bits=bits).total,
        "|x|")
    report = {
        "t": forms.t, "ell": ws.ell, "ell_computed": ws.ell_computed,
        "kappa": ws.kappa, "e": system.e, "degrees": list(system.degrees),
        "lead_lcm": system.lead_lcm, "c1": system.c1,
        "epsilon": problem.epsilon, "a": list(problem.a),
        "m_s": problem.systems.grid_degree,
        "theta_heights": [Enclosure.of_interval(h.height_interval(96))
                          for h in system.heights],
        "theta_height_cap": theta_cap,
        "y_norm": witness.norm.interval(96), "witness_bound": witness.bound,
        "x_norm": x_norm.interval(96),
        "kr_simplified": bounds.simplified, "kr_sharp": bounds.sharp,
        "search_cap": kr.cap, "searched": kr.searched,
        "residuals": _residual_report(kr),
        "bound_total": b1.total, "bound_components": b1.components(),
        "determinant": {
            "det": ws.det_report.det, "det_sq": ws.det_report.det_sq,
            "closed_form_sq": ws.det_report.closed_form_sq,
            "naive_form_sq": ws.det_report.naive_form_sq,
            "naive_match": ws.det_report.naive_match},
        "complexity": {"value": comp.value, "considered": comp.considered},
        "witness_certificates": [
            {"system": c.system_index, "poly": c.poly_index,
             "interval": c.value_interval, "bits": c.bits}
            for c in witness.certificates],
        "x_certificates": x_certs,
    }
    return Certificate(
        theorem=1, problem_hash=problem.source_hash,
        y_coords=witness.y_coords, q=kr.q, p=kr.p, x_coords=x_coords,
        alpha_coords=tuple(comp.alpha),
        theta_coords=tuple(th.coords for th in system.thetas),
        xi=witness.xi, chosen=tuple(j for j, _ in chosen), d_prime=None,
        report=report)


def _theorem2_candidates(problem: Problem, lattice: EmbeddedLattice,
                         forms: FormMatrix, ell: int,
                         indices: Sequence[int]):
    """Denominator candidates with their heights and bound values; the
    returned list is ordered as enumerated, the pick minimizes the bound."""
    ideal = DenominatorIdeal(problem.module)
    cands = ideal.candidates(problem.options.candidate_cap)
    rows = []
    for alpha in cands:
        mp = problem.subfield.minimal_polynomial(alpha)
        h = HeightEnclosure(mp)
        hinv = h.inverse_height()
        b2 = bound_theorem2(problem.module, lattice, indices, forms.height,
                            forms.t, ell, problem.epsilon, h, hinv)
        rows.append((alpha, h, hinv, b2))
    best = min(range(len(rows)), key=lambda i: (rows[i][3].total.hi, i))
    return rows, best


def solve_theorem2(problem: Problem) -> Certificate:
    """Full pipeline for sublattice avoidance: witness outside every
    sublattice, scaled search along the witness line, bound check,
    certificate."""
    if problem.mode != MODE_SUBLATTICES:
        raise ValidationError("this solver needs sublattice avoidance data")
    ws = prepare(problem)
    if not ws.independent:
        raise IndependenceError(
            "1 and the form entries are linearly dependent over the "
            "coefficient-generated field")
    assert problem.sublattices is not None
    lattice, forms = ws.lattice, ws.forms
    gammas = list(problem.sublattices)
    indices = [g.index for g in gammas]
    rows, best = _theorem2_candidates(problem, lattice, forms, ws.ell, indices)
    alpha, alpha_h, alpha_inv_h, b2 = rows[best]
    witness = sublattice_avoid(lattice, gammas, alpha_h)
    system = ThetaSystem.build(forms.apply(witness.y_embedded))
    _require_degrees(system, ws.ell)
    theta_cap = theta_height_cap_theorem2(lattice, indices, alpha_h,
                                          alpha_inv_h, forms.height)
    for i, h in enumerate(system.heights):
        if not _height_not_above(h, theta_cap):
            raise BoundViolation(
                f"h(theta_{i + 1}) certified above its closed-form cap")
    d_prime = 1
    for idx in indices:
        d_prime *= idx
    det = lattice.determinant_enclosure(96)
    ratio = b2.d_total / det ** len(indices)
    if not (ratio.lo <= d_prime <= ratio.hi):
        raise NonIntegerDPrime(
            f"index product {d_prime} falls outside the determinant-ratio "
            f"enclosure {ratio.interval}")
    scaled = ThetaSystem.build([th * d_prime for th in system.thetas])
    if scaled.e != system.e:
        raise BoundViolation("integer scaling changed the field degree")
    targets = [problem.field.from_rational(a) - th
               for a, th in zip(problem.a, system.thetas)]
    sharp = _sharp_bound(scaled.t, scaled.e, scaled.c1, problem.epsilon)
    cap = _search_cap(problem, sharp, b2.g_cap)
    kr = kr_search(scaled, targets, problem.epsilon, cap, include_zero=True)
    g = kr.q
    multiplier = g * d_prime + 1
    assert multiplier != 0
    x_coords = tuple(c * multiplier for c in witness.y_coords)
    x_embedded = [v * multiplier for v in witness.y_embedded]
    for i, gamma in enumerate(gammas):
        if gamma.contains(x_coords):
            raise BoundViolation(f"solution landed inside sublattice {i}")
    x_norm = NormValue(supnorm_element(x_embedded))
    _check_solution_norm(
        x_norm,
        lambda bits: bound_theorem2(problem.module, lattice, indices,
                                    forms.height, forms.t, ws.ell,
                                    problem.epsilon, alpha_h, alpha_inv_h,
                                    bits=bits).total,
        "|x|")
    report = {
        "t": forms.t, "ell": ws.ell, "ell_computed": ws.ell_computed,
        "kappa": ws.kappa, "e": system.e, "degrees": list(system.degrees),
        "lead_lcm": system.lead_lcm, "c1": system.c1,
        "scaled_c1": scaled.c1,
        "epsilon": problem.epsilon, "a": list(problem.a),
        "indices": indices,
        "theta_heights": [Enclosure.of_interval(h.height_interval(96))
                          for h in system.heights],
        "theta_height_cap": theta_cap,
        "y_norm": witness.norm.interval(96), "witness_bound": witness.bound,
        "x_norm": x_norm.interval(96),
        "kr_sharp": sharp, "g_cap": b2.g_cap,
        "search_cap": kr.cap, "searched": kr.searched,
        "residuals": _residual_report(kr),
        "bound_total": b2.total, "bound_components": b2.components(),
        "determinant": {
            "det": ws.det_report.det, "det_sq": ws.det_report.det_sq,
            "closed_form_sq": ws.det_report.closed_form_sq,
            "naive_form_sq": ws.det_report.naive_form_sq,
            "naive_match": ws.det_report.naive_match},
        "alpha_considered": len(rows),
    }
    return Certificate(
        theorem=2, problem_hash=problem.source_hash,
        y_coords=witness.y_coords, q=g, p=kr.p, x_coords=x_coords,
        alpha_coords=tuple(alpha),
        theta_coords=tuple(th.coords for th in system.thetas),
        xi=None, chosen=None, d_prime=d_prime, report=report)


def solve(problem: Problem) -> Certificate:
    if problem.mode == MODE_POLYNOMIALS:
        return solve_theorem1(problem)
    return solve_theorem2(problem)


def oracle_min_x(problem: Problem, cap: int) -> tuple[int, ...]:
    """First lattice point in enumeration order, up to sup-norm ``cap``,
    that avoids the avoidance data and approximates the targets."""
    if cap < 1:
        raise ValidationError("cap must be at least 1")
    ws = prepare(problem)
    lattice, forms = ws.lattice, ws.forms
    for pt in points_within(lattice, Fraction(cap), exclude_zero=True):
        point = pt.vector
        if problem.mode == MODE_POLYNOMIALS:
            assert problem.systems is not None
            if problem.systems.member(point):
                continue
        else:
            assert problem.sublattices is not None
            if any(g.contains(pt.coeffs) for g in problem.sublattices):
                continue
        good = True
        for value, a in zip(forms.apply(point), problem.a):
            _, r = nearest_residual(value - problem.field.from_rational(a))
            if (r * r - problem.epsilon * problem.epsilon).sign() >= 0:
                good = False
                break
        if good:
            return pt.coeffs
    raise CapExceeded(f"no solution with |x| <= {cap}")


# -- certificate verification --------------------------------------------------------


@dataclass
class VerdictItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerdictReport:
    items: list[VerdictItem]

    @property
    def all_ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failed(self) -> list[VerdictItem]:
        return [item for item in self.items if not item.ok]


def _residual_ok(value: FieldElement, p: int, epsilon: Fraction) -> bool:
    try:
        return certify_strict_less(value - p, epsilon)
    except BoundaryIndeterminate:
        return False


def verify(cert: Certificate, problem: Problem) -> VerdictReport:
    """Re-derive every certified inequality from the exact data in the
    certificate; the informational report section is never trusted."""
    if cert.problem_hash != problem.source_hash:
        raise HashMismatch(
            "certificate was issued for a different problem document")
    items: list[VerdictItem] = []

    def check(name: str, ok: bool, detail: str = "") -> bool:
        items.append(VerdictItem(name, bool(ok), detail))
        return bool(ok)

    expected_mode = MODE_POLYNOMIALS if cert.theorem == 1 else MODE_SUBLATTICES
    if not check("mode", problem.mode == expected_mode,
                 f"theorem {cert.theorem} vs avoidance mode {problem.mode}"):
        return VerdictReport(items)
    ws = prepare(problem)
    lattice, forms = ws.lattice, ws.forms
    check("independence", ws.independent,
          "1 and the form entries must be independent over the coefficient field")
    sd = lattice.rank
    if not check("witness-shape", len(cert.y_coords) == sd and any(cert.y_coords),
                 f"witness must be a nonzero coefficient vector of length {sd}"):
        return VerdictReport(items)
    y_embedded = lattice.point(cert.y_coords)
    y_norm = NormValue(supnorm_element(y_embedded))

    if cert.theorem == 1:
        assert problem.systems is not None
        minima = successive_minima(lattice)
        comp = complexity_minimum(problem.module, ws.kappa, sd,
                                  cap=problem.options.candidate_cap)
        chosen = select_product_poly(problem.systems, lattice, minima)
        check("alpha-choice", tuple(comp.alpha) == cert.alpha_coords,
              "recorded alpha must match the deterministic minimizer")
        check("chosen-polynomials",
              cert.chosen == tuple(j for j, _ in chosen),
              "recorded polynomial choices must match the deterministic scan")
        if cert.xi is not None and len(cert.xi) == len(minima.vectors):
            combo = tuple(
                sum(c * v[k] for c, v in zip(cert.xi, minima.vectors))
                for k in range(sd))
            check("witness-combination", combo == cert.y_coords,
                  "witness must be the recorded grid combination of the minima")
        else:
            check("witness-combination", False, "missing or malformed grid data")
        ok_nz = all(bool(poly.eval_field(y_embedded)) for _, poly in chosen)
        check("witness-avoidance",
              ok_nz and not problem.systems.member(y_embedded),
              "witness must certifiably avoid every zero set")
        try:
            check("witness-norm", norm_leq(
                y_norm, lambda bits: grid_norm_bound(
                    lattice, problem.systems.grid_degree, comp.height, bits)),
                "witness norm must respect the avoidance bound")
        except PrecisionCapExceeded:
            check("witness-norm", False, "undecided at the precision cap")
        alpha_h, alpha_inv_h = comp.height, comp.inv_height
        complexity = comp.value
    else:
        assert problem.sublattices is not None
        gammas = list(problem.sublattices)
        indices = [g.index for g in gammas]
        rows, best = _theorem2_candidates(problem, lattice, forms, ws.ell, indices)
        alpha, alpha_h, alpha_inv_h, b2 = rows[best]
        check("alpha-choice", tuple(alpha) == cert.alpha_coords,
              "recorded alpha must match the deterministic minimizer")
        check("witness-avoidance",
              not any(g.contains(cert.y_coords) for g in gammas),
              "witness must lie outside every sublattice")
        d_prime = 1
        for idx in indices:
            d_prime *= idx
        check("d-prime", cert.d_prime == d_prime,
              f"index product is {d_prime}")
        try:
            check("witness-norm", norm_leq(
                y_norm, lambda bits: sublattice_bound(
                    lattice, indices, alpha_h, bits).total, strict=True),
                "witness norm must be strictly below the avoidance bound")
        except PrecisionCapExceeded:
            check("witness-norm", False, "undecided at the precision cap")
        complexity = None

    try:
        system = ThetaSystem.build(forms.apply(y_embedded))
    except (ZeroTheta, IndependenceError, BoundViolation) as exc:
        check("theta-system", False, str(exc))
        return VerdictReport(items)
    check("theta-system", True)
    check("theta-consistency",
          tuple(th.coords for th in system.thetas) == cert.theta_coords,
          "recorded form values must match the exact recomputation")
    try:
        _require_degrees(system, ws.ell)
        check("degree-caps", True)
    except ValidationError as exc:
        check("degree-caps", False, str(exc))

    t = forms.t
    if len(cert.p) != t:
        check("residuals", False, f"expected {t} integer shifts")
        return VerdictReport(items)
    if cert.theorem == 1:
        values = [th * cert.q - problem.field.from_rational(a)
                  for th, a in zip(system.thetas, problem.a)]
        check("x-consistency",
              cert.x_coords == tuple(c * cert.q for c in cert.y_coords),
              "solution must be q times the witness")
    else:
        assert cert.d_prime is not None
        multiplier = cert.q * cert.d_prime + 1
        values = [th * multiplier - problem.field.from_rational(a)
                  for th, a in zip(system.thetas, problem.a)]
        check("x-consistency",
              multiplier != 0 and cert.x_coords == tuple(
                  c * multiplier for c in cert.y_coords),
              "solution must be (g D' + 1) times the witness")
    res_ok = all(_residual_ok(v, p, problem.epsilon)
                 for v, p in zip(values, cert.p))
    check("residuals", res_ok,
          f"every |form value - target - p| must be strictly below "
          f"{problem.epsilon}")

    x_embedded = lattice.point(cert.x_coords)
    if cert.theorem == 1:
        assert problem.systems is not None
        check("x-avoidance", bool(any(cert.x_coords))
              and not problem.systems.member(x_embedded),
              "solution must stay outside the avoided set")
    else:
        assert problem.sublattices is not None
        check("x-avoidance", bool(any(cert.x_coords)) and not any(
            g.contains(cert.x_coords) for g in problem.sublattices),
            "solution must stay outside every sublattice")

    if cert.theorem == 1:
        bounds = kr_bound(t, ws.ell, system.max_height(), problem.epsilon,
                          e=system.e, c1=system.c1)
        assert bounds.sharp is not None
        q_cap = min(bounds.simplified.hi, bounds.sharp.hi)
        check("q-bound", abs(cert.q) <= math.ceil(q_cap),
              f"|q| = {abs(cert.q)} must be within the guaranteed radius")
        x_norm = NormValue(supnorm_element(x_embedded))
        try:
            ok = norm_leq(x_norm, lambda bits: bound_theorem1(
                problem.module, lattice, forms.height, t, ws.ell,
                problem.systems.grid_degree, problem.epsilon,
                complexity, bits=bits).total)
        except PrecisionCapExceeded:
            ok = False
        check("x-bound", ok, "|x| must respect the displayed bound")
    else:
        scaled = ThetaSystem.build([th * cert.d_prime for th in system.thetas])
        sharp = _sharp_bound(scaled.t, scaled.e, scaled.c1, problem.epsilon)
        g_cap = min(sharp.hi, b2.g_cap.hi)
        check("q-bound", abs(cert.q) <= math.ceil(g_cap),
              f"|g| = {abs(cert.q)} must be within the guaranteed radius")
        x_norm = NormValue(supnorm_element(x_embedded))
        try:
            ok = norm_leq(x_norm, lambda bits: bound_theorem2(
                problem.module, lattice, indices, forms.height, t, ws.ell,
                problem.epsilon, alpha_h, alpha_inv_h, bits=bits).total)
        except PrecisionCapExceeded:
            ok = False
        check("x-bound", ok, "|x| must respect the displayed bound")
    return VerdictReport(items)
