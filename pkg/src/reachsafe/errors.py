"""Exception types raised across the package."""


class GameError(Exception):
    """Base class for every error raised by reachsafe."""


class ArenaError(GameError, ValueError):
    pass


class OverlappingOwnership(ArenaError):
    pass


class DanglingNode(ArenaError):
    pass


class EdgeOutOfRange(ArenaError):
    pass


class NodeOutOfRange(ArenaError):
    pass


class ArenaFormatError(GameError, ValueError):
    """Bad arena file. ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ArenaSyntaxError(ArenaFormatError):
    pass


class ArenaSemanticError(ArenaFormatError):
    """Well-formed lines that contradict each other or the header."""


class ObjectiveMismatch(GameError, ValueError):
    pass


class UnknownEngine(GameError, ValueError):
    pass


class InternalSolverError(GameError, RuntimeError):
    """A solver exceeded the iteration bound guaranteed by the theory."""


class MissingWitness(GameError, RuntimeError):
    pass


class IllegalMove(GameError, ValueError):
    pass


class TooLarge(GameError, ValueError):
    pass


class ConfigInvalid(GameError, ValueError):
    pass


class ZeroBase(GameError, ZeroDivisionError):
    pass


class ResultMismatch(GameError, RuntimeError):
    pass
