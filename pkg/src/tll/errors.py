"""Exception hierarchy.

Every failure mode the library reports maps onto one of these classes so
that callers (and the CLI exit-code mapping) can distinguish bad input,
numerical breakdown, and physical instability.
"""


class TLLError(Exception):
    """Base class for all library errors."""


class DomainError(TLLError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class InstabilityError(TLLError):
    """Parameters produce an imaginary spectrum / non-positive velocity."""

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = violated


class OverflowRangeError(TLLError, OverflowError):
    """Result overflows double precision; carries the base-10 exponent scale."""

    def __init__(self, message, exponent10=None):
        super().__init__(message)
        self.exponent10 = exponent10


class SingularityError(TLLError):
    """A trajectory hit a singular point (gamma <= 0)."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class StiffnessError(TLLError):
    """Adaptive step size underflowed before reaching the target time."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class RootNotFoundError(TLLError):
    """Bracketing search exhausted its scan window without a sign change."""


class LinearDependenceError(TLLError):
    """Homogeneous solutions are (numerically) linearly dependent."""


class ConsistencyError(TLLError):
    """Two algebraically equivalent internal routes disagreed."""


class IncompleteGridError(TLLError):
    """A mode sum was requested with trajectories missing for some momenta."""


class ConfigError(TLLError):
    """Run configuration failed validation; carries field-path diagnostics."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
