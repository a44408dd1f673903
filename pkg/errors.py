class ZetaQuantError(ValueError):
    """Base class for every error raised by the library."""


class RangeError(ZetaQuantError):
    """A result would overflow double precision."""


class DomainError(ZetaQuantError):
    """An operation was called outside its precondition."""


class ConstructionError(ZetaQuantError):
    """A multiset or operator cannot be built from the given data."""


class PoleError(ZetaQuantError):
    def __init__(self, message: str, index: int | None = None, value: complex | None = None):
        super().__init__(message)
        self.index = index
        self.value = value


class TruncationError(ZetaQuantError):
    pass


class CertificationError(ZetaQuantError):
    """The tail model does not place the operator in the requested ideal."""


class ConsistencyError(ZetaQuantError):
    """Two independent routes to the same quantity disagree."""


class QuadratureError(ZetaQuantError):
    pass


class ParseError(ZetaQuantError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class InsufficientDataError(ZetaQuantError):
    pass


class BoundExceededError(ZetaQuantError):
    pass


class RecognitionError(ZetaQuantError):
    pass
