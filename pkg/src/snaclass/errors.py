class ValidationError(ValueError):
    """Input that is well-formed but violates a domain rule."""


class ParseError(ValidationError):
    """A log or config line that cannot be decoded."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class RecordError(ValidationError):
    """A decoded log record that breaks a schema invariant."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ThresholdOrderError(ValidationError):
    """A link of the breakpoint ordering chain is broken."""

    def __init__(self, left: str, right: str, message: str):
        self.pair = (left, right)
        super().__init__(message)


class RampDegeneracyError(ValidationError):
    """Two breakpoints that must differ are equal."""

    def __init__(self, left: str, right: str, message: str):
        self.pair = (left, right)
        super().__init__(message)


class DomainError(ValidationError):
    """A characteristic value outside [0, 1]."""
