"""Problem files: exact JSON schema, validation, and canonical hashing.

A problem file describes one approximation task:

* ``field``: the ambient real number field E (monic integer minimal
  polynomial plus an isolating rational root interval),
* ``number_field``: the coefficient field K embedded into E, or ``null``
  for K = Q (generator images under every embedding, an integral basis,
  and the field discriminant, all validated exactly),
* ``module``: a rank-s module in K^w given by a pseudo-basis of
  (ideal Z-basis, generator vector) pairs,
* ``forms``: a t x (w*d) matrix of E-elements, given by power-basis
  coordinate vectors,
* ``target``: the rational target vector a and rational tolerance epsilon,
* ``avoidance``: either polynomial systems or full-rank sublattices,
* ``options``: caps and overrides.

Every number is exact: integers, or rationals written as "p/q" strings.
The problem hash is the SHA-256 of the canonical JSON re-serialization, so
whitespace and key order in the source file do not affect identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .avoidance import PRECISION_CAP_BITS, MultiPoly, PolySystemSet
from .certificate import canonical_json, sha256_hex
from .errors import ValidationError
from .field import FieldDescriptor, FieldElement, field_validate
from .intervals import parse_rational
from .lattices import Sublattice
from .modules import ModuleM
from .subfield import SubfieldK, rational_subfield

MODE_POLYNOMIALS = "polynomials"
MODE_SUBLATTICES = "sublattices"


def _rat(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise ValidationError(f"{where}: expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return parse_rational(v)
        except ValueError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
    raise ValidationError(f"{where}: expected an exact rational, got {v!r}")


def _rat_list(v, where: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise ValidationError(f"{where}: expected a list")
    return [_rat(x, f"{where}[{i}]") for i, x in enumerate(v)]


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"{where}: expected an integer, got {v!r}")
    return v


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ValidationError(f"{where}: missing required key {key!r}")
    return data[key]


@dataclass(frozen=True)
class Options:
    ell: int | None = None
    candidate_cap: int = 200
    search_cap: int | None = None
    precision_cap_bits: int = PRECISION_CAP_BITS


@dataclass
class Problem:
    """A fully validated approximation task."""

    field: FieldDescriptor
    subfield: SubfieldK
    module: ModuleM
    form_rows: tuple[tuple[FieldElement, ...], ...]
    a: tuple[Fraction, ...]
    epsilon: Fraction
    mode: str
    systems: PolySystemSet | None
    sublattices: tuple[Sublattice, ...] | None
    options: Options
    source_hash: str
    description: str = ""

    @property
    def t(self) -> int:
        return len(self.form_rows)


def _parse_field(data, where: str) -> FieldDescriptor:
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object")
    minpoly = _require(data, "minpoly", where)
    if not isinstance(minpoly, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in minpoly):
        raise ValidationError(f"{where}.minpoly: expected a list of integers")
    interval = _require(data, "root_interval", where)
    if not isinstance(interval, list) or len(interval) != 2:
        raise ValidationError(f"{where}.root_interval: expected [lo, hi]")
    lo = _rat(interval[0], f"{where}.root_interval[0]")
    hi = _rat(interval[1], f"{where}.root_interval[1]")
    return field_validate(minpoly, (lo, hi))


def _parse_subfield(data, ambient: FieldDescriptor, where: str) -> SubfieldK:
    if data is None:
        return rational_subfield(ambient)
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object or null")
    minpoly = _require(data, "minpoly", where)
    real_images = [_rat_list(img, f"{where}.real_images[{i}]")
                   for i, img in enumerate(_require(data, "real_images", where))]
    complex_raw = data.get("complex_images", [])
    complex_images = []
    for i, pair in enumerate(complex_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValidationError(f"{where}.complex_images[{i}]: expected [re, im]")
        complex_images.append((_rat_list(pair[0], f"{where}.complex_images[{i}][0]"),
                               _rat_list(pair[1], f"{where}.complex_images[{i}][1]")))
    basis = [_rat_list(b, f"{where}.integral_basis[{i}]")
             for i, b in enumerate(_require(data, "integral_basis", where))]
    disc = _int(_require(data, "disc", where), f"{where}.disc")
    return SubfieldK(ambient, minpoly, real_images, complex_images, basis, disc)


def _parse_module(data, K: SubfieldK, where: str) -> ModuleM:
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object")
    w = _int(_require(data, "w", where), f"{where}.w")
    pairs = _require(data, "pseudo_basis", where)
    if not isinstance(pairs, list) or not pairs:
        raise ValidationError(f"{where}.pseudo_basis: expected a nonempty list")
    pseudo = []
    for j, pair in enumerate(pairs):
        pw = f"{where}.pseudo_basis[{j}]"
        if not isinstance(pair, dict):
            raise ValidationError(f"{pw}: expected an object")
        ideal = [_rat_list(b, f"{pw}.ideal_basis[{i}]")
                 for i, b in enumerate(_require(pair, "ideal_basis", pw))]
        gen = [_rat_list(g, f"{pw}.generator[{i}]")
               for i, g in enumerate(_require(pair, "generator", pw))]
        pseudo.append((ideal, gen))
    return ModuleM(K, w, pseudo)


def _parse_forms(data, field: FieldDescriptor, wd: int, where: str):
    if not isinstance(data, list) or not data:
        raise ValidationError(f"{where}: expected a nonempty list of rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != wd:
            raise ValidationError(
                f"{where}[{i}]: expected {wd} coordinate vectors (w*d entries)")
        rows.append(tuple(field.element(_rat_list(entry, f"{where}[{i}][{j}]"))
                          for j, entry in enumerate(row)))
    return tuple(rows)


def _parse_poly(data, nvars: int, where: str) -> MultiPoly:
    if not isinstance(data, dict) or "terms" not in data:
        raise ValidationError(f"{where}: expected an object with a 'terms' list")
    terms = {}
    for i, item in enumerate(data["terms"]):
        if not isinstance(item, list) or len(item) != 2:
            raise ValidationError(f"{where}.terms[{i}]: expected [exponents, coefficient]")
        exps, coeff = item
        if not isinstance(exps, list) or len(exps) != nvars:
            raise ValidationError(f"{where}.terms[{i}]: expected {nvars} exponents")
        key = tuple(_int(e, f"{where}.terms[{i}]") for e in exps)
        terms[key] = terms.get(key, Fraction(0)) + _rat(coeff, f"{where}.terms[{i}][1]")
    return MultiPoly(nvars, terms)


def _parse_avoidance(data, wd: int, sd: int, where: str):
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object")
    mode = _require(data, "mode", where)
    if mode == MODE_POLYNOMIALS:
        systems_raw = _require(data, "systems", where)
        if not isinstance(systems_raw, list) or not systems_raw:
            raise ValidationError(f"{where}.systems: expected a nonempty list")
        systems = []
        for i, sys in enumerate(systems_raw):
            if not isinstance(sys, list) or not sys:
                raise ValidationError(f"{where}.systems[{i}]: expected a nonempty list")
            systems.append([_parse_poly(p, wd, f"{where}.systems[{i}][{j}]")
                            for j, p in enumerate(sys)])
        trivial = bool(data.get("zero_locus_trivial", False))
        return MODE_POLYNOMIALS, PolySystemSet(wd, systems, trivial), None
    if mode == MODE_SUBLATTICES:
        subs_raw = _require(data, "sublattices", where)
        if not isinstance(subs_raw, list) or not subs_raw:
            raise ValidationError(f"{where}.sublattices: expected a nonempty list")
        subs = []
        for i, sub in enumerate(subs_raw):
            sw = f"{where}.sublattices[{i}]"
            if not isinstance(sub, dict) or "columns" not in sub:
                raise ValidationError(f"{sw}: expected an object with 'columns'")
            cols = sub["columns"]
            if not isinstance(cols, list) or len(cols) != sd:
                raise ValidationError(f"{sw}.columns: expected {sd} columns "
                                      "(full rank in lattice coordinates)")
            columns = [[_int(v, f"{sw}.columns[{j}]") for v in col]
                       for j, col in enumerate(cols)]
            if any(len(col) != sd for col in columns):
                raise ValidationError(f"{sw}.columns: each column needs {sd} entries")
            subs.append(Sublattice(columns))
        return MODE_SUBLATTICES, None, tuple(subs)
    raise ValidationError(f"{where}.mode: expected '{MODE_POLYNOMIALS}' or "
                          f"'{MODE_SUBLATTICES}', got {mode!r}")


def _parse_options(data, where: str) -> Options:
    if data is None:
        return Options()
    if not isinstance(data, dict):
        raise ValidationError(f"{where}: expected an object")
    known = {"ell", "candidate_cap", "search_cap", "precision_cap_bits"}
    unknown = set(data) - known
    if unknown:
        raise ValidationError(f"{where}: unknown option keys {sorted(unknown)}")
    ell = data.get("ell")
    if ell is not None:
        ell = _int(ell, f"{where}.ell")
        if ell < 1:
            raise ValidationError(f"{where}.ell: must be positive")
    cap = _int(data.get("candidate_cap", 200), f"{where}.candidate_cap")
    if cap < 1:
        raise ValidationError(f"{where}.candidate_cap: must be positive")
    search = data.get("search_cap")
    if search is not None:
        search = _int(search, f"{where}.search_cap")
        if search < 1:
            raise ValidationError(f"{where}.search_cap: must be positive")
    bits = _int(data.get("precision_cap_bits", PRECISION_CAP_BITS),
                f"{where}.precision_cap_bits")
    if bits < 32:
        raise ValidationError(f"{where}.precision_cap_bits: must be at least 32")
    return Options(ell=ell, candidate_cap=cap, search_cap=search,
                   precision_cap_bits=bits)


def parse_problem(data: dict) -> Problem:
    """Validate a decoded problem document and build the exact objects."""
    if not isinstance(data, dict):
        raise ValidationError("problem document must be a JSON object")
    source_hash = sha256_hex(canonical_json(data))
    ambient = _parse_field(_require(data, "field", "problem"), "field")
    K = _parse_subfield(data.get("number_field"), ambient, "number_field")
    module = _parse_module(_require(data, "module", "problem"), K, "module")
    wd = module.w * K.degree
    sd = module.s * K.degree
    forms = _parse_forms(_require(data, "forms", "problem"), ambient, wd, "forms")
    target = _require(data, "target", "problem")
    if not isinstance(target, dict):
        raise ValidationError("target: expected an object")
    a = tuple(_rat_list(_require(target, "a", "target"), "target.a"))
    if len(a) != len(forms):
        raise ValidationError(f"target.a: expected {len(forms)} entries, got {len(a)}")
    epsilon = _rat(_require(target, "epsilon", "target"), "target.epsilon")
    if epsilon <= 0:
        raise ValidationError("target.epsilon: must be positive")
    mode, systems, subs = _parse_avoidance(
        _require(data, "avoidance", "problem"), wd, sd, "avoidance")
    options = _parse_options(data.get("options"), "options")
    description = data.get("description", "")
    if not isinstance(description, str):
        raise ValidationError("description: expected a string")
    return Problem(field=ambient, subfield=K, module=module, form_rows=forms,
                   a=a, epsilon=epsilon, mode=mode, systems=systems,
                   sublattices=subs, options=options, source_hash=source_hash,
                   description=description)


def load_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read problem file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"problem file is not valid JSON: {exc}") from exc
    return parse_problem(data)
