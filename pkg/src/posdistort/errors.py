"""Exception types raised by posdistort."""


class DistortionError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveEntry(DistortionError, ValueError):
    """An entry is zero, negative, NaN or infinite."""

    def __init__(self, index, value, context=None):
        self.index = tuple(int(i) for i in index)
        self.value = value
        msg = f"entry at {self.index} is not strictly positive and finite: {value!r}"
        super().__init__(msg if context is None else f"{context}: {msg}")


class DimensionMismatch(DistortionError, ValueError):
    pass


class NotTwoByTwo(DistortionError, ValueError):
    pass


class OutOfDomain(DistortionError, ValueError):
    pass


class PreconditionViolated(DistortionError, ValueError):
    pass


class InsufficientData(DistortionError, ValueError):
    pass


class AllConverged(DistortionError, ValueError):
    """Every history entry already sits at distortion 1."""


class ParseError(DistortionError, ValueError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class ConfigError(DistortionError, ValueError):
    pass
