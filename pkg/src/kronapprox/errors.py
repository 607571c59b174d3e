"""Exception hierarchy and process exit codes.

Every error that can surface through the command line carries an ``exit_code``
so the CLI can map failures deterministically:

  0  success
  1  certificate verification found a failing item
  2  input validation, file format, or hash mismatch
  3  rational-independence precondition failed
  4  a configured cap was exhausted (search radius, precision, candidates)
  5  an internally derived bound was violated (indicates a solver bug)
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_DEPENDENT = 3
EXIT_CAP_EXHAUSTED = 4
EXIT_BOUND_VIOLATION = 5


class KronapproxError(Exception):
    """Base class for all library errors."""

    exit_code = EXIT_INVALID_INPUT


class ValidationError(KronapproxError):
    """Malformed or inconsistent input data."""

    exit_code = EXIT_INVALID_INPUT


class ReducibleMinPoly(ValidationError):
    """A defining polynomial is not irreducible over the rationals."""


class EmptyOrAmbiguousRootInterval(ValidationError):
    """A root interval isolates no root, or more than one."""


class ImageNotInE(ValidationError):
    """A declared embedding image does not satisfy its defining polynomial."""


class RankDeficient(ValidationError):
    """Vectors that must be linearly independent are not."""


class ClosedFormMismatch(KronapproxError):
    """Exact determinant disagrees with its closed-form cross-check."""

    exit_code = EXIT_BOUND_VIOLATION


class IndependenceError(KronapproxError):
    """The forms and lattice fail the rational-independence precondition."""

    exit_code = EXIT_DEPENDENT


class DegreeOverflow(KronapproxError):
    """A generated algebraic number has degree exceeding the working bound."""

    exit_code = EXIT_DEPENDENT


class RankCapExceeded(KronapproxError):
    """Lattice rank exceeds the supported enumeration cap."""

    exit_code = EXIT_CAP_EXHAUSTED


class NotFoundWithinRadius(KronapproxError):
    """Complete enumeration up to the radius produced no matching vector."""

    exit_code = EXIT_CAP_EXHAUSTED


class CannotWitnessNonvanishing(KronapproxError):
    """Every polynomial of some system vanishes on the whole probe grid."""

    exit_code = EXIT_CAP_EXHAUSTED


class GridExhaustedAtPrecisionCap(KronapproxError):
    """Grid search ended without a usable point (should be unreachable)."""

    exit_code = EXIT_CAP_EXHAUSTED


class SearchExhausted(KronapproxError):
    """Integer search hit its cap before finding a solution."""

    exit_code = EXIT_CAP_EXHAUSTED


class CapExceeded(KronapproxError):
    """An explicit user-supplied cap was reached."""

    exit_code = EXIT_CAP_EXHAUSTED


class PrecisionCapExceeded(KronapproxError):
    """Interval refinement hit the configured precision cap."""

    exit_code = EXIT_CAP_EXHAUSTED


class BoundaryIndeterminate(KronapproxError):
    """A residual sits exactly on the tolerance boundary; perturb epsilon."""

    exit_code = EXIT_CAP_EXHAUSTED


class NoProperSublattice(ValidationError):
    """An avoidance sublattice has index one, so nothing can be avoided."""


class ZeroTheta(KronapproxError):
    """A linear form vanishes on the chosen witness."""

    exit_code = EXIT_DEPENDENT


class BoundViolation(KronapproxError):
    """A quantity exceeds the bound the construction guarantees."""

    exit_code = EXIT_BOUND_VIOLATION


class NonIntegerDPrime(KronapproxError):
    """The scaled index product is not an integer (internal inconsistency)."""

    exit_code = EXIT_BOUND_VIOLATION


class VerificationFailure(KronapproxError):
    """A certificate check item failed."""

    exit_code = EXIT_VERIFY_FAILED


class HashMismatch(ValidationError):
    """Certificate does not reference the given problem file."""
