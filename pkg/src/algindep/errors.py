"""Exception hierarchy shared by every module."""


class AlgIndepError(Exception):
    """Base class for all library errors."""


class StructuralError(AlgIndepError, ValueError):
    """Objects over incompatible variable lists, unknown variables, bad shapes."""


class ArithmeticDomainError(AlgIndepError, ArithmeticError):
    """Division by zero, arguments outside a function's domain."""


class ValidationError(AlgIndepError, ValueError):
    """A job or argument violates its schema; ``field`` names the culprit."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ParseError(ValidationError):
    """Syntax error with a 1-based position and the offending token."""

    def __init__(self, message: str, line: int, column: int, token: str = "", field: str | None = None):
        self.reason = message
        self.line = line
        self.column = column
        self.token = token
        loc = f"line {line}, column {column}"
        if token:
            super().__init__(f"{message} at {loc} (near {token!r})", field)
        else:
            super().__init__(f"{message} at {loc}", field)


class PrecisionError(AlgIndepError):
    """A certified computation could not reach the requested accuracy."""


class UndecidedError(AlgIndepError):
    """Zero test ran out of samples and symbolic fallback was disabled."""


class InconsistentPointError(ValidationError):
    """The supplied point does not satisfy the equations."""
