"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined."""


class RegimeError(DomainError):
    """Physical parameters outside the regime a closed form is valid in."""


class BracketError(ValueError):
    """Root bracket does not contain a sign change."""


class ConvergenceError(ArithmeticError):
    """Numerical procedure gave up before meeting its tolerance.

    The best available estimate is kept on ``estimate`` so callers can
    still report it.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class ConfigError(ValueError):
    """Invalid or unparsable configuration."""


class UsageError(ValueError):
    """Caller asked for something the inputs cannot provide."""
