"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class TripleError(DomainError):
    """A candidate triple does not satisfy a^2 + b^2 + c^2 = 3abc + m."""

    def __init__(self, m: int, a: int, b: int, c: int):
        self.residual = a * a + b * b + c * c - 3 * a * b * c - m
        super().__init__(
            f"({a}, {b}, {c}) is not a solution for m={m}: residual {self.residual}"
        )


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""
