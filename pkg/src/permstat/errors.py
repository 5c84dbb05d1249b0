"""Exception types shared across the package.

The CLI maps each of these to a fixed exit code, so keep the hierarchy flat.
"""


class PermutationError(ValueError):
    """Malformed permutation or pattern text / values."""


class UnknownStatisticError(KeyError):
    """A statistic (or bijection) name that is not registered."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class ContainmentError(ValueError):
    """Input violates the avoidance precondition of an operation."""

    def __init__(self, pattern, perm, message=None):
        self.pattern = pattern
        self.perm = perm
        super().__init__(message or f"{perm} contains the pattern {pattern}")


class BoundExceededError(ValueError):
    """Requested length is above the configured safety bound."""
