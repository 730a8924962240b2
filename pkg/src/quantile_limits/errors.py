"""Exception types raised by quantile-limits operations."""


class QuantileLimitsError(ValueError):
    """Base class for all validation errors raised by this package."""


class EmptyDistribution(QuantileLimitsError):
    """Distribution constructed from an empty atom list."""


class NegativeProbability(QuantileLimitsError):
    """An atom probability is zero or negative."""


class NonFiniteAtom(QuantileLimitsError):
    """An atom value or probability is NaN or infinite."""


class ProbabilitySumOutOfTolerance(QuantileLimitsError):
    """Atom probabilities do not sum to 1 within the construction tolerance."""


class ProbabilityOutOfRange(QuantileLimitsError):
    """A probability level lies outside the range required by the operation."""


class ValueOutsideSupport(QuantileLimitsError):
    """An observation does not match any atom of the bound support."""


class EmptySample(QuantileLimitsError):
    """Operation requires at least one observation."""


class ParameterOutOfRange(QuantileLimitsError):
    """A numeric parameter violates its documented range."""


class InvalidInterval(QuantileLimitsError):
    """Interval endpoints are not strictly ordered."""


class NoQuantileGap(QuantileLimitsError):
    """Transform requires distinct left and right quantiles at the level."""


class ValueInGap(QuantileLimitsError):
    """A value lies strictly inside the zero-probability quantile gap."""


class EmptyWindow(QuantileLimitsError):
    """No trajectory records remain after the burn-in cutoff."""
