"""The coefficient number field K and its archimedean embeddings.

K is described abstractly by a monic integer irreducible polynomial of
degree d; its elements are power-basis coordinate vectors.  Real embeddings
are given by images of the generator inside the ambient field E; complex
embeddings by real/imaginary image pairs in E.  A declared integral basis
and discriminant are verified exactly: ring axioms by integer coordinate
checks, the discriminant as the exact square of the embedding-matrix
determinant.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ImageNotInE, RankDeficient, ReducibleMinPoly, ValidationError
from .field import ComplexFieldElement, FieldDescriptor, FieldElement, is_irreducible
from .linalg import det, inverse, nullspace
from .ratpoly import poly_divmod, poly_xgcd, to_primitive_int

KElement = tuple  # tuple[Fraction, ...], power-basis coordinates


class SubfieldK:
    """Validated number field data with embeddings into the ambient field."""

    def __init__(self, ambient: FieldDescriptor, minpoly: Sequence[int],
                 real_images: Sequence[Sequence], complex_images: Sequence,
                 integral_basis: Sequence[Sequence], disc: int):
        self.ambient = ambient
        self.minpoly = tuple(int(c) for c in minpoly)
        if len(self.minpoly) < 2 or self.minpoly[-1] != 1:
            raise ValidationError("field polynomial must be monic of degree >= 1")
        self.degree = len(self.minpoly) - 1
        if not is_irreducible(self.minpoly):
            raise ReducibleMinPoly(f"{list(self.minpoly)} is reducible over Q")
        self._minpoly_frac = [Fraction(c) for c in self.minpoly]

        self.real_images: list[FieldElement] = [
            ambient.element(img) if not isinstance(img, FieldElement) else img
            for img in real_images]
        self.complex_images: list[ComplexFieldElement] = []
        for pair in complex_images:
            if isinstance(pair, ComplexFieldElement):
                self.complex_images.append(pair)
            else:
                re, im = pair
                re = ambient.element(re) if not isinstance(re, FieldElement) else re
                im = ambient.element(im) if not isinstance(im, FieldElement) else im
                self.complex_images.append(ComplexFieldElement(re, im))
        self.r1 = len(self.real_images)
        self.r2 = len(self.complex_images)
        if self.r1 + 2 * self.r2 != self.degree:
            raise ValidationError(
                f"embedding signature ({self.r1}, {self.r2}) does not match degree {self.degree}")

        for img in self.real_images:
            if self._eval_at_field(img):
                raise ImageNotInE("real generator image does not satisfy the field polynomial")
        for z in self.complex_images:
            val = self._eval_at_complex(z)
            if val.re or val.im:
                raise ImageNotInE("complex generator image does not satisfy the field polynomial")
            if not z.im:
                raise ValidationError("complex embedding image has zero imaginary part")

        self.integral_basis: list[KElement] = [self.element(b) for b in integral_basis]
        if len(self.integral_basis) != self.degree:
            raise ValidationError("integral basis must have d elements")
        self._basis_matrix = [[self.integral_basis[j][i] for j in range(self.degree)]
                              for i in range(self.degree)]
        inv = inverse(self._basis_matrix)
        if inv is None:
            raise RankDeficient("integral basis is linearly dependent")
        self._basis_inv = inv
        self.disc = int(disc)
        if self.disc == 0:
            raise ValidationError("discriminant must be nonzero")
        self._check_ring()
        self._check_disc()

    # -- element arithmetic over the power basis --------------------------------

    def element(self, coords: Sequence) -> KElement:
        c = [Fraction(v) for v in coords]
        if len(c) != self.degree:
            raise ValidationError(f"expected {self.degree} coordinates, got {len(c)}")
        return tuple(c)

    def from_rational(self, v) -> KElement:
        return (Fraction(v),) + (Fraction(0),) * (self.degree - 1)

    @property
    def one(self) -> KElement:
        return self.from_rational(1)

    @property
    def zero(self) -> KElement:
        return self.from_rational(0)

    def add(self, a: KElement, b: KElement) -> KElement:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: KElement) -> KElement:
        return tuple(-x for x in a)

    def scale(self, a: KElement, c) -> KElement:
        c = Fraction(c)
        return tuple(x * c for x in a)

    def mul(self, a: KElement, b: KElement) -> KElement:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        # reduce powers >= d by long division against the field polynomial
        _, rem = poly_divmod(conv, self._minpoly_frac)
        rem = list(rem) + [Fraction(0)] * (d - len(rem))
        return tuple(rem[:d])

    def inv(self, a: KElement) -> KElement:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in K")
        g, u, _ = poly_xgcd(list(a), self._minpoly_frac)
        if len(g) != 1:
            raise ValidationError("element not invertible; field polynomial reducible?")
        _, rem = poly_divmod(u, self._minpoly_frac)
        rem = list(rem) + [Fraction(0)] * (self.degree - len(rem))
        return tuple(rem[:self.degree])

    def minimal_polynomial(self, a: KElement) -> tuple[int, ...]:
        """Primitive integer minimal polynomial of an element of K."""
        d = self.degree
        powers = [self.one]
        current = self.one
        for k in range(1, d + 1):
            current = self.mul(current, a)
            powers.append(current)
            matrix = [[powers[j][i] for j in range(k + 1)] for i in range(d)]
            kernel = nullspace(matrix)
            if kernel:
                vec = kernel[0]
                assert vec[k] != 0
                poly = [c / vec[k] for c in vec]
                return tuple(to_primitive_int(poly))
        raise AssertionError("unreachable")

    # -- integral structure -------------------------------------------------

    def to_integral_coords(self, a: KElement) -> list[Fraction]:
        return [sum(self._basis_inv[i][j] * a[j] for j in range(self.degree))
                for i in range(self.degree)]

    def is_integral(self, a: KElement) -> bool:
        return all(c.denominator == 1 for c in self.to_integral_coords(a))

    def _check_ring(self) -> None:
        if not self.is_integral(self.one):
            raise ValidationError("1 is not in the Z-span of the integral basis")
        d = self.degree
        for i in range(d):
            for j in range(i, d):
                prod = self.mul(self.integral_basis[i], self.integral_basis[j])
                if not self.is_integral(prod):
                    raise ValidationError(
                        "integral basis is not multiplicatively closed over Z")

    def _check_disc(self) -> None:
        t = self.embedding_matrix(self.integral_basis)
        dt = det(t)
        square = dt * dt
        if square.im or not square.re.is_rational() or square.re.as_fraction() != self.disc:
            raise ValidationError(
                f"declared discriminant {self.disc} does not match the exact "
                "square of the embedding matrix determinant")

    # -- embeddings -----------------------------------------------------------

    def embed_real(self, a: KElement, which: int) -> FieldElement:
        img = self.real_images[which]
        acc = self.ambient.zero
        for c in reversed(a):
            acc = acc * img + self.ambient.from_rational(c)
        return acc

    def embed_complex(self, a: KElement, which: int) -> ComplexFieldElement:
        img = self.complex_images[which]
        acc = ComplexFieldElement(self.ambient.zero, self.ambient.zero)
        for c in reversed(a):
            acc = acc * img + ComplexFieldElement.real(self.ambient.from_rational(c))
        return acc

    def embedding_matrix(self, elements: Sequence[KElement]) -> list[list[ComplexFieldElement]]:
        """Rows: all d embeddings (conjugate pairs adjacent); columns: elements."""
        rows = []
        for i in range(self.r1):
            rows.append([ComplexFieldElement.real(self.embed_real(e, i)) for e in elements])
        for i in range(self.r2):
            imgs = [self.embed_complex(e, i) for e in elements]
            rows.append(imgs)
            rows.append([z.conj() for z in imgs])
        return rows

    def minkowski_embed(self, vector: Sequence[KElement]) -> list[FieldElement]:
        """The standard real embedding of K^w into R^(wd), coordinates over E.

        Layout: for each real embedding a block of w values; for each complex
        embedding a block of w real parts then a block of w imaginary parts.
        """
        out: list[FieldElement] = []
        for i in range(self.r1):
            out.extend(self.embed_real(a, i) for a in vector)
        for i in range(self.r2):
            zs = [self.embed_complex(a, i) for a in vector]
            out.extend(z.re for z in zs)
            out.extend(z.im for z in zs)
        return out

    def _eval_at_field(self, x: FieldElement) -> FieldElement:
        acc = self.ambient.zero
        for c in reversed(self.minpoly):
            acc = acc * x + self.ambient.from_rational(c)
        return acc

    def _eval_at_complex(self, z: ComplexFieldElement) -> ComplexFieldElement:
        acc = ComplexFieldElement(self.ambient.zero, self.ambient.zero)
        for c in reversed(self.minpoly):
            acc = acc * z + ComplexFieldElement.real(self.ambient.from_rational(c))
        return acc


def rational_subfield(ambient: FieldDescriptor) -> SubfieldK:
    """K = Q: generator 0, identity embedding, integral basis {1}, disc 1."""
    return SubfieldK(ambient, [0, 1], [[0] * ambient.degree], [], [[1]], 1)
