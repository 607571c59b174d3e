"""Solution certificates with a canonical, byte-stable text serialization.

A certificate separates two kinds of data:

* exact core fields (integer vectors, rational coordinates) from which every
  claimed inequality can be re-derived independently, and
* an informational ``report`` of enclosures and bound values recorded at
  solve time, useful for display but never trusted by verification.

Serialization is canonical JSON: sorted keys, minimal separators, rationals
as ``p/q`` strings, intervals as ``{lo, hi}`` objects.  Identical inputs
therefore produce byte-identical certificate files.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .intervals import DyadicInterval, Enclosure, format_rational, parse_rational

FORMAT_NAME = "kronapprox-certificate"
FORMAT_VERSION = 1


def encode_value(v):
    """Map exact numeric types onto JSON-safe values, recursively."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, DyadicInterval):
        return {"lo": format_rational(v.lo), "hi": format_rational(v.hi)}
    if isinstance(v, Enclosure):
        out = {"lo": format_rational(v.interval.lo),
               "hi": format_rational(v.interval.hi)}
        if v.exact is not None:
            out["exact"] = format_rational(v.exact)
        return out
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    raise ValidationError(f"cannot serialize value of type {type(v).__name__}")


def canonical_json(data) -> str:
    return json.dumps(encode_value(data), sort_keys=True, separators=(",", ":"))


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _rat(v) -> Fraction:
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise ValidationError(f"expected an exact rational, got {v!r}")


@dataclass(frozen=True)
class Certificate:
    """Exact solution data for one Theorem-1 or Theorem-2 run."""

    theorem: int
    problem_hash: str
    y_coords: tuple[int, ...]
    q: int  # the Kronecker integer: q itself, or g for the sublattice variant
    p: tuple[int, ...]
    x_coords: tuple[int, ...]
    alpha_coords: tuple[Fraction, ...]
    theta_coords: tuple[tuple[Fraction, ...], ...]
    xi: tuple[int, ...] | None = None
    chosen: tuple[int, ...] | None = None
    d_prime: int | None = None
    report: dict = field(default_factory=dict)

    def payload(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "theorem": self.theorem,
            "problem_hash": self.problem_hash,
            "y_coords": list(self.y_coords),
            "q": self.q,
            "p": list(self.p),
            "x_coords": list(self.x_coords),
            "alpha_coords": [format_rational(c) for c in self.alpha_coords],
            "theta_coords": [[format_rational(c) for c in row]
                             for row in self.theta_coords],
            "xi": list(self.xi) if self.xi is not None else None,
            "chosen": list(self.chosen) if self.chosen is not None else None,
            "d_prime": self.d_prime,
            "report": encode_value(self.report),
        }

    def to_json(self) -> str:
        return canonical_json(self.payload()) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or data.get("format") != FORMAT_NAME:
            raise ValidationError("not a certificate document")
        if data.get("version") != FORMAT_VERSION:
            raise ValidationError(f"unsupported certificate version {data.get('version')}")
        try:
            xi = data.get("xi")
            chosen = data.get("chosen")
            return cls(
                theorem=int(data["theorem"]),
                problem_hash=str(data["problem_hash"]),
                y_coords=tuple(int(v) for v in data["y_coords"]),
                q=int(data["q"]),
                p=tuple(int(v) for v in data["p"]),
                x_coords=tuple(int(v) for v in data["x_coords"]),
                alpha_coords=tuple(_rat(v) for v in data["alpha_coords"]),
                theta_coords=tuple(tuple(_rat(v) for v in row)
                                   for row in data["theta_coords"]),
                xi=tuple(int(v) for v in xi) if xi is not None else None,
                chosen=tuple(int(v) for v in chosen) if chosen is not None else None,
                d_prime=int(data["d_prime"]) if data.get("d_prime") is not None else None,
                report=data.get("report", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed certificate field: {exc}") from exc


def load_certificate(path: str) -> Certificate:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return Certificate.from_json(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read certificate: {exc}") from exc


def save_certificate(cert: Certificate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cert.to_json())
