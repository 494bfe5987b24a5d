"""Exception types shared across the toolkit."""


class OcpkitError(Exception):
    """Base class for all toolkit errors."""


class InstanceTooLarge(OcpkitError):
    """Raised when an input exceeds the documented size limit of an exact oracle."""

    def __init__(self, what, limit, actual):
        self.what = what
        self.limit = limit
        self.actual = actual
        super().__init__(f"{what}: instance too large (limit {limit}, got {actual})")


class BudgetExceeded(OcpkitError):
    """Raised when a search exceeds its configured node budget."""

    def __init__(self, what, budget):
        self.what = what
        self.budget = budget
        super().__init__(f"{what}: node budget of {budget} exceeded")


class GraphStructureError(OcpkitError):
    """Raised on structural preconditions: not 2-connected, bipartite input,
    not a minimal cut, unknown vertex, and the like."""


class DecompositionError(OcpkitError):
    """Raised when an operation requires a valid (or tame) decomposition and
    the supplied one is not."""


class PipelineError(OcpkitError):
    """Raised by the integer-program pipeline; carries the failing stage."""

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


class FormatError(OcpkitError):
    """Raised by file parsers, with a 1-based line number when available."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
