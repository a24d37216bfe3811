"""Exception types shared across the package."""


class DiskdiamError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DiskdiamError, ValueError):
    """Evaluation requested outside a function's certified radius."""


class InvalidArgument(DiskdiamError, ValueError):
    """An argument violates a documented constraint."""


class PreconditionError(DiskdiamError, ValueError):
    """A verifier's mathematical precondition is violated by the input."""


class DegenerateInputError(DiskdiamError, ValueError):
    """Input is degenerate for the requested operation (e.g. a constant map)."""


class UnivalenceError(DiskdiamError, ValueError):
    """The univalence contract of a domain map appears to be violated."""


class BudgetExceededError(DiskdiamError, RuntimeError):
    """Refinement ran out of samples; carries the best enclosure found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SpecFormatError(DiskdiamError, ValueError):
    """A function-spec document failed to parse; carries the JSON path."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
