"""Exception hierarchy shared across the package."""


class SloshError(Exception):
    """Base class for all package errors."""


class ConfigError(SloshError, ValueError):
    pass


class NonPositiveLength(ConfigError):
    pass


class InvalidAngleInteger(ConfigError):
    pass


class DegenerateBothHalfPi(ConfigError):
    pass


class NegativeIndex(SloshError, ValueError):
    pass


class DomainError(SloshError, ValueError):
    pass


class IndexOutOfRange(SloshError, ValueError):
    pass


class TangentPole(SloshError, ArithmeticError):
    pass


class OutsideSector(SloshError, ValueError):
    pass


class OutsideTriangle(SloshError, ValueError):
    pass


class BelowCutoff(SloshError, ValueError):
    pass


class NumericalFailure(SloshError, ArithmeticError):
    """Raised when a solver fails in a way the theory says it should not."""


class RootNotBracketed(NumericalFailure):
    pass


class QUndefined(NumericalFailure):
    pass


class DegenerateTriangle(SloshError, ValueError):
    pass


class SingularElement(NumericalFailure):
    pass


class FactorizationFailure(NumericalFailure):
    pass


class InsufficientModes(SloshError, ValueError):
    pass
