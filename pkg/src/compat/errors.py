"""Exception types raised across the package."""


class CompatError(Exception):
    """Base class for all package errors."""


class DataError(CompatError, ValueError):
    """Input data violates a contract (shape, range, format)."""


class WrongArity(DataError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"expected {expected} values, got {got}")


class OutOfRange(DataError):
    def __init__(self, index, value, name=None):
        self.index = index
        self.value = value
        self.name = name
        label = name if name is not None else f"index {index}"
        super().__init__(f"score for {label} is {value}, outside [0, 10]")


class PopulationTooSmall(DataError):
    pass


class EmptySplit(DataError):
    pass


class BadArchitecture(DataError):
    pass


class ShapeMismatch(DataError):
    pass


class EmptyDataset(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class FormatVersionError(DataError):
    pass


class MalformedFile(DataError):
    """A CSV/JSON input could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, path, message, line=None):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")
