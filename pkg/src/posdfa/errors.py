"""Exception hierarchy shared by every module of the package."""


class PosDfaError(Exception):
    """Base class for all package errors."""


class InvalidWordError(PosDfaError, ValueError):
    pass


class AlphabetMismatchError(PosDfaError, ValueError):
    pass


class InvalidDfaError(PosDfaError, ValueError):
    pass


class InvalidConfigError(PosDfaError, ValueError):
    pass


class ParseError(PosDfaError, ValueError):
    """Malformed input file. `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TooLargeError(PosDfaError):
    """Raised when an exhaustive enumeration would exceed its guard."""


class SolverUnavailableError(PosDfaError):
    pass


class SolverError(PosDfaError):
    pass


class SolverProtocolError(SolverError):
    """The solver ran but its output could not be interpreted."""


class InvalidSolutionError(PosDfaError):
    def __init__(self, message: str, constraint: str | None = None):
        self.constraint = constraint
        super().__init__(message)


class InvalidValuationError(PosDfaError, ValueError):
    pass


class UnsupportedError(PosDfaError):
    pass


class UndefinedCorrelationError(PosDfaError, ValueError):
    pass
