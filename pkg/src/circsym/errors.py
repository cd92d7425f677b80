"""Exception types raised across the package."""


class CircsymError(Exception):
    """Base class for all package errors."""


class InvalidModulusError(CircsymError, ValueError):
    pass


class DegenerateGeneratorError(CircsymError, ValueError):
    """Generators coincide up to sign, or a generator is zero."""


class NormalizationRequiredError(CircsymError, ValueError):
    """Parameters are not in the normalized form 0 < i < j <= n/2 with gcd(n, i, j) = 1."""


class WrongRegimeError(CircsymError, ValueError):
    """The operation does not apply to this family of graphs."""


class DisconnectedSpecError(CircsymError, ValueError):
    pass


class InvariantViolationError(CircsymError, ValueError):
    pass


class ContextMismatchError(CircsymError, TypeError):
    """A group element was applied to a graph it does not act on."""


class BudgetExceededError(CircsymError, RuntimeError):
    """A brute-force or exhaustive search refused to run, or ran past its node limit."""
