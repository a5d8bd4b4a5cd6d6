"""Error types shared across the package.

All derive from ValueError so library users can catch broadly; the CLI maps
them onto its exit codes.
"""


class MgcorrError(ValueError):
    """Base class for all package errors."""


class InvalidDataError(MgcorrError):
    """Input data contains non-finite values or has an unusable shape."""


class InsufficientSampleError(MgcorrError):
    """Too few observations for the requested operation."""


class DimensionMismatchError(MgcorrError):
    """Paired inputs disagree on the number of observations."""


class UnsupportedDimensionError(MgcorrError):
    """Operation is only defined for a restricted dimensionality (e.g. 1-D)."""


class DegenerateDataError(MgcorrError):
    """Data carries no usable variation (e.g. a constant sample)."""


class ParameterError(MgcorrError):
    """A configuration value is out of range or unknown."""
