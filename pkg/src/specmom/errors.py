"""Exception hierarchy shared across the package.

Every domain failure raises a subclass of SpecmomError so the CLI can map
them to a single exit code without matching on message text.
"""


class SpecmomError(Exception):
    """Base class for all domain errors raised by specmom."""


# --- probability vector validation -----------------------------------------

class NegativeEntry(SpecmomError):
    pass


class SumNotOne(SpecmomError):
    pass


class MeanNotZero(SpecmomError):
    pass


class P1NonZero(SpecmomError):
    pass


class P0Zero(SpecmomError):
    pass


class OrderTooSmall(SpecmomError):
    pass


class WeightsInvalid(SpecmomError):
    pass


# --- polynomial evaluation and root finding --------------------------------

class Overflow(SpecmomError):
    """A polynomial value exceeded the 1e300 magnitude guard."""


class ZeroArgument(SpecmomError):
    pass


class NoConvergence(SpecmomError):
    """Root finder missed its residual target; carries the best residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


# --- solvers ---------------------------------------------------------------

class ZeroVector(SpecmomError):
    pass


class NonFiniteIterate(SpecmomError):
    pass


# --- matrix I/O ------------------------------------------------------------

class DimensionMismatch(SpecmomError):
    pass


class BadHeader(SpecmomError):
    pass


class IndexOutOfRange(SpecmomError):
    pass


class NonSquare(SpecmomError):
    pass


class DomainError(SpecmomError):
    """A scalar argument fell outside the documented domain."""


class GammaInside(SpecmomError):
    pass


class DuplicateEntryWarning(UserWarning):
    """Duplicate coordinate entries in a Matrix Market file were summed."""
