"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the documented domain of an operation."""


class InfeasibleThresholdError(DomainError):
    """The window is too small for the requested (alpha, r) threshold."""


class SizeError(ValueError):
    """An input exceeds a guard against accidental quadratic blowups."""
