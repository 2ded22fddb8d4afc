"""Exception types shared across the toolkit."""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class OutOfRangeError(ToolkitError):
    """A vertex id is outside 0..n-1."""


class SelfLoopError(ToolkitError):
    """An edge with equal endpoints was supplied."""


class GraphParseError(ToolkitError):
    """Malformed graph/map/edge-set text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class HeaderMismatchError(GraphParseError):
    """Declared n/m in the header disagree with the body."""


class DisconnectedInputError(ToolkitError):
    """Operation requires a connected graph."""


class NotUVertexError(ToolkitError):
    """Vertex does not carry role U1 or U2."""


class EqualEndpointsError(ToolkitError):
    """Pair lookup called with a == b."""


class NotAugmentingError(ToolkitError):
    """Edge set does not bring the gadget to diameter <= 2."""


class NotProperError(ToolkitError):
    """Edge set is not of the form {x,u} with u in U1 only."""


class RuleUnsoundError(ToolkitError):
    """An edge swap broke the diameter-2 property, or the rules reached a
    non-proper fixed point.  Carries the trace accumulated so far."""

    def __init__(self, message: str, trace=None, step=None):
        super().__init__(message)
        self.trace = trace
        self.step = step


class NonTerminationError(ToolkitError):
    """Normalization exceeded its step budget."""


class ResourceExceededError(ToolkitError):
    """Solver hit its node-expansion cap before deciding the instance."""
