"""Exception types raised by mixture validation and kernel evaluation."""


class MixtureError(ValueError):
    """Base class for mixture specification and validation errors."""


class WeightError(MixtureError):
    """Mixture weights are non-positive or do not sum to one."""


class DimensionMismatch(MixtureError):
    """Vector/matrix shapes disagree with the model dimension."""


class NotPositiveDefinite(MixtureError):
    """Gaussian covariance is asymmetric or not positive definite."""


class NonPositiveScale(MixtureError):
    """Laplacian scale or box half-width is not strictly positive."""


class SpecFormatError(MixtureError):
    """Mixture specification file is malformed (unknown kind, missing field)."""


class NonDiagonalCovariance(MixtureError):
    """Cross-family overlap kernel requires a diagonal Gaussian covariance."""


class NonFiniteLogDensity(RuntimeError):
    """A sampled point produced a non-finite mixture log-density."""


class ToleranceNotReached(RuntimeError):
    """Adaptive quadrature could not meet the requested error tolerance."""
