"""Exception hierarchy shared across the package."""


class FifcoverError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FifcoverError, ValueError):
    """Invalid interpolation input."""


class TooFewPoints(InputError):
    pass


class NonIncreasingAbscissas(InputError):
    pass


class LengthMismatch(InputError):
    pass


class ScalingOutOfRange(InputError):
    pass


class NonFiniteValue(InputError):
    pass


class DegenerateMap(FifcoverError, ValueError):
    """Map has no unique fixed point (x- or y-contraction factor >= 1)."""


class LetterOutOfRange(FifcoverError, IndexError):
    """A word letter does not index a map of the system."""


class DepthCapExceeded(FifcoverError, ValueError):
    """n**depth composed maps would exceed the configured cap."""


class MalformedDocument(FifcoverError, ValueError):
    """An input file could not be parsed into the expected schema."""
