"""Exception types shared across the package."""


class SpectopError(Exception):
    """Base class for every error raised by this package."""


class CycleError(SpectopError):
    """The covering relation has a directed cycle, so no partial order exists."""


class UnknownLabelError(SpectopError):
    """A covering pair mentions a label that is not an element."""


class SizeError(SpectopError):
    """An input exceeds a configured size or memory budget."""


class EmptySpaceError(SpectopError):
    """The operation needs a nonempty space."""


class ConflictError(SpectopError):
    """Curated ring metadata contradicts a theorem-backed verdict."""


class ParseError(SpectopError):
    """Malformed or non-canonical input text.

    ``position`` is the character offset of the offending token.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityError(ParseError):
    """A combinator was applied to the wrong number of arguments."""
