"""Exception types shared across the package."""


class HzError(Exception):
    """Base class for all package-specific errors."""


class InstanceTooLarge(HzError):
    """Raised when an exact enumeration would exceed its size limit."""


class ImproperInput(HzError):
    """A supplied coloring violates properness or palette bounds."""


class StaleChain(HzError):
    """A Kempe chain no longer matches the coloring it is applied to."""


class VerticesNotOnChain(HzError):
    """Subchain endpoints do not lie on the given chain."""


class ShiftConflict(HzError):
    """A shift operation left the center vertex with a color conflict."""


class NoSegment(HzError):
    """A chain segment was requested on an even cycle, where none exists."""


class AmbiguousSegment(HzError):
    """The start vertex is interior to its chain and no direction was given."""


class NotHzFan(HzError):
    """A multifan does not meet the degree requirements for normalization."""


class NotElementary(HzError):
    """A vertex set required to be elementary has a missing-color collision."""


class InvalidParams(HzError):
    """Generator parameters violate their invariants."""


class NotCandidate(HzError):
    """The graph falls outside the classifier's structural hypothesis."""


class DescentBudgetExceeded(HzError):
    """Kempe descent stalled and the exact fallback was disabled."""


class OracleTimeout(HzError):
    """The exact search exceeded its node budget."""

    def __init__(self, lower_bound, upper_bound, nodes_explored):
        super().__init__(
            f"search budget exhausted; chromatic index in "
            f"[{lower_bound}, {upper_bound}] after {nodes_explored} nodes"
        )
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.nodes_explored = nodes_explored


class PreconditionFailed(HzError):
    """A structural builder was called on vertices that do not qualify."""


class CertificateUnavailable(HzError):
    """No certified pseudo-multifan could be constructed for the check."""
