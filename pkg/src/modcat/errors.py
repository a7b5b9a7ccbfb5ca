class ModcatError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ModcatError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class DimensionMismatch(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class LengthMismatch(InputError):
    pass


class IncompleteTable(InputError):
    pass


class NonIntegralFusion(ModcatError):
    pass


class NotASimpleCurrent(ModcatError):
    pass


class NotScalar(ModcatError):
    pass


class NotUnimodular(ModcatError):
    pass


class SwapMissing(ModcatError):
    pass


class InvalidCocycle(ModcatError):
    pass


class TooLarge(ModcatError):
    pass


class NotClosed(ModcatError):
    pass


class NotCurrents(ModcatError):
    pass


class NotAdmissible(ModcatError):
    pass


class FixedPointsPresent(ModcatError):
    pass


class WrongDatum(ModcatError):
    pass


class NimRepConstructionError(ModcatError):
    pass


class NegativeEntry(NimRepConstructionError):
    pass


class TruncationFailure(NimRepConstructionError):
    pass


class NoPhysicalM0(ModcatError):
    pass
