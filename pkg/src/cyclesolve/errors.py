"""Exception types raised across the package."""


class CycleSolveError(ValueError):
    pass


class GraphError(CycleSolveError):
    """Base class for rejected graph inputs."""


class LoopEdge(GraphError):
    pass


class TwoCycleOrParallelEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class DomainMismatch(CycleSolveError):
    pass


class NotAnEdge(CycleSolveError):
    pass


class RepeatedEdge(CycleSolveError):
    pass


class EdgeInTree(CycleSolveError):
    pass


class EdgeOutOfRange(CycleSolveError):
    pass


class EmptyCycle(CycleSolveError):
    pass


class EmptyBasis(CycleSolveError):
    pass


class NotABasis(CycleSolveError):
    pass


class TooLarge(CycleSolveError):
    pass


class InvalidParams(CycleSolveError):
    pass


class IncompatibleRHS(CycleSolveError):
    """The right-hand side does not sum to zero.

    ``total`` holds the offending value of ``(1, f)``.
    """

    def __init__(self, total, message=None):
        self.total = total
        if message is None:
            message = (
                f"right-hand side violates the compatibility condition (1, f) = 0: "
                f"sum(f) = {total!r}"
            )
        super().__init__(message)


class ParseError(CycleSolveError):
    """Malformed input file; ``path`` and ``line`` locate the problem."""

    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
