"""Exception types shared across dirlab.

The CLI maps these onto exit codes, so each one corresponds to a
distinct failure class rather than to a particular module.
"""


class CapacityError(ValueError):
    """An enumeration or table would exceed its configured size guard."""


class BudgetExceededError(RuntimeError):
    """A numerical routine could not reach its tolerance within budget.

    The best estimate obtained so far is kept on the exception.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class DegenerateSpacingError(ValueError):
    """Frequencies coincide (zero gap) where distinct ones are required."""


class ConstructionError(RuntimeError):
    """A constructed object failed its own verification."""
