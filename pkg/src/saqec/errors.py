class SaqecError(Exception):
    """Base class for all library errors."""


class ValidationError(SaqecError, ValueError):
    """Input violates a documented precondition."""


class DimensionError(ValidationError):
    pass


class ResourceError(SaqecError):
    """Requested dense object would exceed the configured size limits."""


class BracketError(SaqecError, ValueError):
    """Threshold bracket does not straddle a zero of the functional."""
