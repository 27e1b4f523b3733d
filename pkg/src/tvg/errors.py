"""Exception types shared across the package."""


class TvgError(Exception):
    """Base class for all errors raised by this library."""


class DomainError(TvgError):
    """An argument violated an operation's precondition."""


class IncomparableError(DomainError):
    """The two TVGs do not share (vertices, edges, latencies, process latency)."""


class FormatError(TvgError):
    """Malformed or invalid serialized input."""


class SimulationError(TvgError):
    """An algorithm violated the simulator contract.

    Carries the tick and process at which the violation happened so the CLI
    can report them precisely.
    """

    def __init__(self, message: str, tick: int | None = None, process: str | None = None):
        detail = message
        if tick is not None:
            detail += f" (tick {tick}"
            detail += f", process {process})" if process is not None else ")"
        super().__init__(detail)
        self.tick = tick
        self.process = process
