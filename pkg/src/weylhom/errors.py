"""Exception hierarchy shared by every module."""


class WeylHomError(Exception):
    """Base class for all library errors."""


class ParameterError(WeylHomError, ValueError):
    """An argument is outside the documented domain of an operation."""


class DomainError(WeylHomError, ValueError):
    """A lemma's precondition does not hold for the supplied data."""


class UnsupportedRegime(ParameterError):
    """The family parameters fall in a case handled elsewhere (d = 1 or b = 1)."""


class InvariantViolation(WeylHomError, AssertionError):
    """An internal consistency check failed.

    Raised when two independent computations that must agree do not.  In a
    verification tool this is the interesting outcome, so it is never caught
    and turned into a fallback.
    """
