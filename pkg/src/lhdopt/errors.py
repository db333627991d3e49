"""Exception hierarchy for lhdopt.

Every error raised by the library derives from :class:`LhdError`, so callers
can catch one type at the boundary (the CLI maps them to exit codes).
"""


class LhdError(Exception):
    """Base class for all lhdopt errors."""


class InvalidDimensionError(LhdError, ValueError):
    """Run or factor count outside the supported range."""


class IndexOutOfRangeError(LhdError, IndexError):
    """Row or column index outside the design."""


class UnsupportedExponentError(LhdError, ValueError):
    """Distance exponent other than 1 or 2."""


class IndivisibleRunsError(LhdError, ValueError):
    """Run count not divisible by the slice count."""


class DegenerateCoordinateError(LhdError, ValueError):
    """Two rows share a level in some column (non-LHD input)."""


class TooFewColumnsError(LhdError, ValueError):
    """Correlation summaries need at least two columns."""


class InvalidWeightError(LhdError, ValueError):
    """Combination weight outside [0, 1]."""


class InvalidConfigError(LhdError, ValueError):
    """Optimizer configuration violates the algorithm's requirements."""


class InvalidOAError(LhdError, ValueError):
    """Array is not a valid symmetric orthogonal array of strength 2."""


class InvalidParameterError(LhdError, ValueError):
    """Construction parameter outside its documented range."""


class DimensionMismatchError(LhdError, ValueError):
    """Coupled inputs have incompatible shapes."""


class UnknownNameError(LhdError, KeyError):
    """Name not present in the bundled catalog."""


class InvalidDesignError(LhdError, ValueError):
    """A matrix failed Latin hypercube validation."""
