"""Exception hierarchy shared across the package."""


class DoubleWellError(Exception):
    """Base class for all package-specific failures."""


class AlgebraError(DoubleWellError):
    """Invalid exact-arithmetic operation (division by zero function, etc.)."""


class PoleError(AlgebraError):
    """Exact evaluation requested at a pole of a rational function."""


class UnsupportedPoleError(AlgebraError):
    """Antidifferentiation hit a denominator factor without rational roots."""


class EnergyWindowError(DoubleWellError):
    """Requested energy lies outside the usable ground-state window."""


class BlowUpError(DoubleWellError):
    """An inward integration diverged before reaching its target point.

    Carries the abscissa where the divergence was detected.
    """

    def __init__(self, message: str, x: float):
        super().__init__(message)
        self.x = x


class TailError(DoubleWellError):
    """An improper integral's tail did not satisfy its decay condition."""


class GridError(DoubleWellError):
    """Grid too small or otherwise unable to support the requested accuracy."""


class ConvergenceError(DoubleWellError):
    """An iterative solve failed to converge within its budget."""


class BracketError(DoubleWellError):
    """A root bracket contains zero or more than one sign change."""
