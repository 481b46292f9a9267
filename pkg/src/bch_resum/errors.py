"""Exception types raised across the package."""


class BCHResumError(Exception):
    """Base class for all package errors."""


class NearSingular(BCHResumError, ValueError):
    """An argument (or contiguous argument sum) is too close to a pole."""


class ArgumentOverflow(BCHResumError, OverflowError):
    """An argument magnitude exceeds the double-precision sinh range."""


class ArityMismatch(BCHResumError, ValueError):
    pass


class NonSPD(BCHResumError, ValueError):
    """Matrix is not symmetric positive definite."""


class NotSymmetric(BCHResumError, ValueError):
    pass


class DegenerateSpectrum(BCHResumError, ValueError):
    """Two eigenvalues are closer than the configured gap threshold."""


class AmbiguousMatching(BCHResumError, RuntimeError):
    """Eigenvector overlap too small to track a state across a sweep."""


class ConfigError(BCHResumError, ValueError):
    pass
