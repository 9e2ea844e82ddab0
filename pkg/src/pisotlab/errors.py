"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PisotLabError(Exception):
    """Base class for every error raised deliberately by this package."""


class InvalidParameters(PisotLabError, ValueError):
    """Arguments outside a function's documented domain."""


class NonExactDivision(PisotLabError, ArithmeticError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class DegreeMismatch(InvalidParameters):
    """Two polynomials were expected to share a degree but do not."""


class NotMonic(InvalidParameters):
    """A monic polynomial was required."""


class ZeroConstantTerm(InvalidParameters):
    """The constant coefficient vanishes, so 0 is a root and the usual
    algebraic-integer analysis does not apply."""


class NotPisot(PisotLabError):
    """A number field was requested for a polynomial whose root geometry
    failed certification."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ExactHalfInteger(PisotLabError, ArithmeticError):
    """Nearest-integer rounding hit a value exactly halfway between two
    integers; no rounding convention is applied, the caller must decide."""

    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


class PrecisionExhausted(PisotLabError):
    """An adaptive-precision computation reached its bit cap without reaching
    a certified decision."""

    def __init__(self, message: str, bits: int | None = None):
        super().__init__(message)
        self.bits = bits


class NoRecurrenceFound(PisotLabError):
    """No linear recurrence within the allowed order fits any suffix of the
    sequence under the detection policy."""


class RecurrenceUnavailable(PisotLabError):
    """A congruence scan needed recurrence extension beyond the exact range
    but no verified recurrence was supplied."""


class IndexBelowOnset(InvalidParameters):
    """A recurrence extension was asked for an index before the recurrence
    starts to hold."""


class VariantInapplicable(PisotLabError):
    """The requested coefficient-prediction rule does not apply to this
    polynomial (wrong degree, or a recognized limit-point family)."""


class ResidualTooLarge(PisotLabError):
    """A certified residual bound exceeded the requested tolerance."""

    def __init__(self, message: str, residual=None, tolerance=None):
        super().__init__(message)
        self.residual = residual
        self.tolerance = tolerance


class NoRootInInterval(PisotLabError):
    """The constructed polynomial has no root in the interval the equation
    family promises."""


class IncomparableMagnitudes(PrecisionExhausted):
    """Two fractional-part magnitudes could not be certified disjoint (or
    certified equal) within the precision cap."""


class IncomparableAdjacent(PrecisionExhausted):
    """Two adjacent chain values could not be certified disjoint at the
    requested precision."""


class CatalogError(PisotLabError):
    """Malformed catalog file or unknown catalog entry."""
