"""Exception hierarchy.

Everything raised on purpose by this package derives from DfstatesError, so
callers can catch one type at the CLI boundary.  The ValueError/RuntimeError
mixins keep `except ValueError` working for code that treats bad parameters
generically.
"""


class DfstatesError(Exception):
    """Base class for all errors raised by dfstates."""


class DomainError(DfstatesError, ValueError):
    """A parameter is outside the supported range (negative count, order
    beyond the accuracy envelope, magnitude beyond the overflow guard)."""


class DimensionError(DfstatesError, ValueError):
    """An operation needs more Fock levels than the state carries, or the
    truncation tail is too heavy for the requested quantity."""


class DegenerateStateError(DfstatesError, ValueError):
    """The requested state is the zero vector (subtracting more photons than
    the state contains at zero displacement)."""


class ConvergenceError(DfstatesError, RuntimeError):
    """A series failed to settle within the configured term budget.

    The partial result, when one exists, rides along in `partial` so a
    caller can inspect how far the sum got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConsistencyError(DfstatesError, AssertionError):
    """Two independent internal routes disagreed beyond tolerance."""
