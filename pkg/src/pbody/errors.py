"""Exception types shared across the package."""


class PBodyError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(PBodyError):
    """Input collapses to something without interior (area zero)."""


class NegativeSupport(PBodyError):
    """A p-sum operand does not contain the origin."""


class SingularMatrix(PBodyError):
    """Linear map with (numerically) vanishing determinant."""


class OriginOutside(PBodyError):
    """Operation requires the origin inside the body."""


class OriginNotInterior(OriginOutside):
    """Operation requires the origin strictly inside the body."""


class DirectionMismatch(PBodyError):
    """Two linear parameter systems do not share a movement direction."""


class NotReducible(PBodyError):
    """Vertex-count reduction requested on a triangle."""


class QuadratureFailure(PBodyError):
    """Adaptive quadrature could not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error_estimate=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class ToleranceNotReached(PBodyError):
    """Area bracketing hit its sample cap; the last bracket is attached."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class ConsistencyFailure(PBodyError):
    """Independent evaluation pipelines disagree beyond tolerance."""
