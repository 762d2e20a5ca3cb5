"""Exception hierarchy shared by every subsystem."""


class QtorError(Exception):
    """Base class for all library errors."""


class InputError(QtorError):
    """A precondition on user-supplied data was violated."""


class DomainError(QtorError):
    """The requested operation is undefined for the given object."""


class ParseError(InputError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else "%s (at position %d)" % (message, position))
        self.position = position


class ExactDivisionError(QtorError):
    """A division that was required to be exact left a remainder."""


class WindowError(QtorError):
    """A truncated series was read outside its valid window."""


class MixedOrderError(DomainError):
    """Arithmetic between cyclotomic elements of different orders."""


class ConstructionError(InputError):
    """A structured object (Cartan matrix, module, ...) failed validation."""


class AlgorithmFailure(QtorError):
    """A combinatorial algorithm reached a state it cannot justify."""


class EscapeError(QtorError):
    """An operator application left the materialized basis window."""
