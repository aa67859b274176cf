"""Exception hierarchy shared by all modules."""


class MorseError(Exception):
    """Base class for every error raised by the package."""


class DomainError(MorseError, ValueError):
    """Argument outside the mathematical domain of a function."""


class DegenerateParameterError(MorseError, ValueError):
    """Parameter choice makes a formula singular (e.g. a vanishing Pochhammer)."""


class ModelTooShallowError(MorseError, ValueError):
    """The well supports fewer than two bound states."""


class NormalizabilityError(MorseError, ValueError):
    """Squeezing parameter outside the unit disk."""


class UndefinedStatisticError(MorseError, ArithmeticError):
    """A statistic is undefined for the given state (e.g. Q with zero mean)."""


class AccuracyError(MorseError, ArithmeticError):
    """A numerical self-check (convergence, variance sign) failed."""


class QuadratureError(AccuracyError):
    """Quadrature produced a non-finite sample or failed to converge."""


class ConfigurationError(MorseError, ValueError):
    """Inconsistent inputs, e.g. a table built for different parameters."""
