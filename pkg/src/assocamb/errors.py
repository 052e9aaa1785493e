"""Exceptions shared across the machines and oracles."""


class BudgetError(RuntimeError):
    """A configured search budget was exhausted.

    ``partial`` carries whatever was completed before the budget ran out
    (a census prefix, the best witness so far, ...), or ``None``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NonTerminationError(BudgetError):
    """An unbounded search hit its ceiling, usually because a bound function
    does not grow as declared."""


class InvariantViolation(AssertionError):
    pass
