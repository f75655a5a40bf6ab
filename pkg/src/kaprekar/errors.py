"""Exception hierarchy. Each class carries a short ``category`` used by the CLI."""


class KaprekarError(Exception):
    category = "error"


class ConfigurationError(KaprekarError, ValueError):
    """Unsupported parameters: base/digit limits, capacity, D < 3 for gap features."""

    category = "config"


class DomainError(KaprekarError, ValueError):
    category = "domain"


class ClosureError(KaprekarError, RuntimeError):
    """A non-trivial state was mapped onto a repdigit (or 0)."""

    category = "closure"


class NumericalError(KaprekarError, ArithmeticError):
    category = "numerical"


class DegenerateFitError(NumericalError):
    category = "degenerate-fit"


class DegenerateFeatureError(NumericalError):
    category = "degenerate-feature"


class SingularFitError(NumericalError):
    category = "singular-fit"
