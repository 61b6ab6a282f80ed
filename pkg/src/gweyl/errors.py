"""Exception types raised across the package."""


class GweylError(Exception):
    """Base class for all package errors."""


class ShapeError(GweylError, ValueError):
    pass


class NonPositiveSeedMass(GweylError, ValueError):
    """The seed mass (m1 or m3) must be strictly positive; the construction divides by it."""


class MasslessLimit(GweylError, ValueError):
    """No chiral-scaling transform to the Dirac operator exists when the physical mass is zero."""


class ZeroMomentumDirection(GweylError, ValueError):
    """Helicity is undefined for a vanishing 3-momentum."""


class OffShell(GweylError, ValueError):
    """Raised when a four-momentum misses the required mass shell.

    ``violation`` holds the measured ``E^2 - c^2 p^2 - m^2 c^4``.
    """

    def __init__(self, message, violation=float("nan")):
        super().__init__(message)
        self.violation = violation


class EigenFailure(GweylError, ArithmeticError):
    pass


class NonDiagonalizable(GweylError, ArithmeticError):
    pass
