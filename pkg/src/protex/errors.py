"""Exception hierarchy shared by the whole package.

Exit-code contract of the CLI: bad input maps to 2, exhausted budgets
and fuel map to 3, everything else that completes reports verdicts
inside the report and exits 0.
"""


class ProtexError(Exception):
    """Base class for all package errors."""


class ParseError(ProtexError):
    """Invalid external input; carries the path of the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class InvariantViolation(ProtexError):
    """A constructed value failed one of its structural invariants."""


class UnboundedError(ProtexError):
    """A null direction has a non-null image; no operator norm exists."""


class NotNonExpanding(ProtexError):
    """Operation requires a map of operator norm at most one."""


class NotComposable(ProtexError):
    """Consecutive morphisms do not share the required object."""


class NotSpanning(ProtexError):
    """The supplied vectors do not span the target module."""


class SolverUnavailable(ProtexError):
    """The category instance lacks the capability needed (enumeration, solver)."""


class BudgetExceeded(ProtexError):
    """An enumeration or audit exceeded its configured budget."""


class FuelExhausted(ProtexError):
    """Factorization ran out of fuel; carries the partial certificate."""

    def __init__(self, message: str, certificate=None):
        self.certificate = certificate
        super().__init__(message)
