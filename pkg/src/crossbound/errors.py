"""Exception hierarchy shared across the engine."""


class CrossboundError(Exception):
    """Base class for all engine errors."""


class InvalidWindowError(CrossboundError):
    """A window reference has length 0 or exceeds the decomposition size."""


class SizeGuardError(CrossboundError):
    """An exhaustive search was refused because the input exceeds a guard."""


class DomainError(CrossboundError):
    """An argument refers to an object the drawing does not contain."""


class DecompositionViolation(CrossboundError):
    """A claimed transitive decomposition failed verification.

    ``kind`` is ``"structural"`` (parts are not an edge-disjoint exact
    cover) or ``"transitivity"`` (no shift automorphism for some pair).
    """

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


class PreconditionError(CrossboundError):
    """A documented operation precondition does not hold."""


class ResourceExhausted(CrossboundError):
    """A search exceeded its configured resource guards.

    Carries the partial per-level log so the caller can report an
    inconclusive outcome instead of a bound.
    """

    def __init__(self, message, partial_log=()):
        super().__init__(message)
        self.partial_log = tuple(partial_log)


class FormatError(CrossboundError):
    """A text artifact (graph, drawing, certificate, ...) failed to parse."""
