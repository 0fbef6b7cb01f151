"""Exception hierarchy shared by the library and the command line front end."""


class StackLabError(Exception):
    """Base class for all errors raised by stacklab."""


class UsageError(StackLabError, ValueError):
    """Arguments are inconsistent (mismatched orders, unknown names, ...)."""


class DomainError(StackLabError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class SafetyBoundError(StackLabError):
    """A brute-force enumeration was asked for a size above the safety bound."""


class NumericError(StackLabError, ArithmeticError):
    """A numerical procedure failed to converge."""
