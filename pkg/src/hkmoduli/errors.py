"""Exception types shared across the package.

The CLI maps these onto exit codes: ``ValidationError`` -> 2,
``InvariantViolation`` -> 3.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class InvariantViolation(RuntimeError):
    """Two independent computations disagreed; this is always a bug."""
