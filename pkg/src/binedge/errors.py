"""Exception types shared across the package."""


class ContextError(ValueError):
    """Operands live in different rings, or the ring has the wrong field."""


class DomainError(ValueError):
    """Operation undefined for the given input (colon by zero, improper ideal)."""


class CapacityError(ValueError):
    """Input exceeds a configured size bound for an exhaustive routine."""


class UnsupportedStructureError(ValueError):
    """Ideal is not presented as a sum of variables and 2-minor ideals."""


class GraphFormatError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
