"""Exception hierarchy shared by every package in the project."""


class TensorRingError(Exception):
    """Base class for all library errors."""


class DomainError(TensorRingError, ValueError):
    """An index, mode or parameter lies outside its valid range."""


class DimensionError(TensorRingError, ValueError):
    """Operand shapes are inconsistent with each other."""


class FormatError(TensorRingError):
    """A tensor or archive file is malformed."""


class ConfigurationError(TensorRingError):
    """Solver or sweep settings are invalid."""
