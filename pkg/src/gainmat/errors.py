"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class GainmatError(Exception):
    exit_code = 2


class InputError(GainmatError, ValueError):
    """Malformed or inconsistent input (bad gain, index out of range, ...)."""

    exit_code = 2

    def __init__(self, message, path=None, code="invalid_input"):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path
        self.reason = message
        self.code = code


class QuadraticContextError(InputError):
    """Two different quadratic fields met in one computation."""


class ShapeError(InputError):
    """Matrix or vector dimensions do not fit together."""


class PreconditionError(GainmatError, ValueError):
    """An operation was called outside its precondition (e.g. a forest with a cycle)."""

    exit_code = 2


class UnsupportedError(GainmatError):
    """Valid request the library deliberately does not handle."""

    exit_code = 3


class BudgetExceededError(GainmatError):
    """Exhaustive enumeration would exceed the configured budget."""

    exit_code = 4

    def __init__(self, what, size, budget):
        super().__init__(
            f"{what} over {size} edges exceeds the enumeration budget of {budget} "
            f"(set GAINMAT_BUDGET to raise it)"
        )
        self.size = size
        self.budget = budget
