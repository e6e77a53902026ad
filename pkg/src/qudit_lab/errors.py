"""Exception hierarchy shared by all modules."""


class QuditLabError(ValueError):
    """Base class for every validation failure raised by the package."""


class DimensionMismatch(QuditLabError):
    pass


class NotHermitian(QuditLabError):
    pass


class NotDensityMatrix(QuditLabError):
    pass


class NoBoundStates(QuditLabError):
    pass


class AncillaOccupied(QuditLabError):
    pass


class BadLevels(QuditLabError):
    pass


class ZeroDipole(QuditLabError):
    pass


class BadBitString(QuditLabError):
    pass


class ConvergenceError(RuntimeError):
    """Iterative routine exhausted its sweep budget."""
