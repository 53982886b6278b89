"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument left its mathematical domain (|z| too close to 1, alpha <= -1, ...)."""


class TruncationMismatchError(ValueError):
    """Two truncated series of different lengths were combined."""


class SingularityError(ValueError):
    """A linear fractional map was evaluated at (or built with) a pole in range."""


class UnboundedSymbolError(ValueError):
    """A matrix build was refused because no boundedness gate admitted the symbols."""


class ConvergenceError(RuntimeError):
    """An adaptive summation hit its hard term cap before meeting tolerance."""


class ConfigError(ValueError):
    """A run configuration failed validation.

    Carries the dotted path of the offending field so callers can report
    structured errors.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
