"""Exception taxonomy shared by all modules.

Each class maps to a distinct CLI exit code (see cli.py).
"""


class StructuralError(ValueError):
    """Malformed combinatorial input (pairing not an involution, bad rotation, ...)."""


class UsageError(ValueError):
    """Invalid parameter combination (mixed truncations, wrong beta for a tag, ...)."""


class BudgetError(RuntimeError):
    """A configured resource budget (half-edges, assignments, degree) was exceeded."""


class VerificationError(RuntimeError):
    """An exact cross-check failed.  Carries the offending location and both values."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload
