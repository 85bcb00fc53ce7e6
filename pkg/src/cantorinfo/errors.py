"""Exception hierarchy shared by every module."""


class CantorInfoError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CantorInfoError, ValueError):
    """An input or an intermediate value lies outside an operation's domain."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class IntegralityError(DomainError):
    """A candidate produced a value that is not a natural number.

    ``kind`` is ``"NON_INTEGRAL"`` or ``"NEGATIVE"``.
    """

    def __init__(self, kind, point, value):
        super().__init__(f"{kind}: value {value} at {point}", point)
        self.kind = kind
        self.value = value


class ArityError(CantorInfoError, ValueError):
    pass


class PolySyntaxError(CantorInfoError, ValueError):
    """Malformed candidate expression; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
