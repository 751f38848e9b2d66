"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class OutOfDomainError(DomainError):
    """A bound was requested outside its validity interval.

    ``cutoff`` carries the right endpoint of the (open) validity interval.
    """

    def __init__(self, message, cutoff):
        super().__init__(message)
        self.cutoff = cutoff


class InvariantError(RuntimeError):
    """A user-supplied object violated a structural invariant."""


class BudgetExceededError(RuntimeError):
    """An iteration did not terminate within its step budget."""
