"""Exception hierarchy shared by all modules."""


class StefanChainError(Exception):
    """Base class for every error raised by the package."""


class InvalidParams(StefanChainError, ValueError):
    pass


class NoSignChange(StefanChainError):
    pass


class MaxIterExceeded(StefanChainError):
    pass


class SubdivisionLimit(StefanChainError):
    pass


class DegenerateRoot(StefanChainError):
    """The similarity root collapses to zero and the front never moves."""


class OutOfDomain(StefanChainError):
    pass


class OutOfRange(StefanChainError):
    pass


class ZeroTemperature(StefanChainError):
    pass


class SingularDenominator(StefanChainError):
    """``w_zz*w - w_z**2`` vanishes, so the reciprocal variable is unbounded."""

    def __init__(self, message, z=None, t=None):
        super().__init__(message)
        self.z = z
        self.t = t


class LogDomain(StefanChainError):
    pass


class NonMonotone(StefanChainError):
    """A sampled map that must be inverted is not strictly monotone."""

    def __init__(self, message, t=None, location=None):
        super().__init__(message)
        self.t = t
        self.location = location


class PicardDiverged(StefanChainError):
    pass


class NonPositiveBoundary(StefanChainError):
    pass


class SingularCoefficient(StefanChainError):
    pass
