"""Exception hierarchy shared by every spectral_lab module."""


class SpectralLabError(Exception):
    """Base class for all library errors."""


class GraphError(SpectralLabError, ValueError):
    pass


class SelfLoop(GraphError):
    def __init__(self, u):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class DuplicateEdge(GraphError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge {{{u},{v}}}")
        self.u, self.v = u, v


class VertexOutOfRange(GraphError):
    pass


class NoSuchEdge(GraphError):
    pass


class EdgeExists(GraphError):
    pass


class GraphFormatError(GraphError):
    """Malformed graph file; ``line`` is 1-based (0 when the file is empty)."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotConnected(SpectralLabError, ValueError):
    pass


class RegularGraph(SpectralLabError, ValueError):
    pass


class NotRegular(SpectralLabError, ValueError):
    pass


class NotIrregular(SpectralLabError, ValueError):
    pass


class DisconnectedAfterDeletion(SpectralLabError, ValueError):
    pass


class NoConvergence(SpectralLabError, RuntimeError):
    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class TooLarge(SpectralLabError, ValueError):
    pass


class NonPositiveBeta(SpectralLabError, ValueError):
    pass


class BadParams(SpectralLabError, ValueError):
    pass


class GenerationFailed(SpectralLabError, RuntimeError):
    pass


class NoConnectedDeletion(SpectralLabError, ValueError):
    pass
