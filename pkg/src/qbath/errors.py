"""Exception hierarchy for qbath."""


class QBathError(Exception):
    """Base class for all qbath errors."""


class InvalidParameters(QBathError, ValueError):
    """Parameters violate a domain invariant (sign, range, ordering)."""


class DegeneratePoles(InvalidParameters):
    """Two susceptibility poles coincide to within the degeneracy tolerance."""


class NoPhysicalRoot(QBathError, ArithmeticError):
    """The pole cubic produced no positive real root. Indicates an internal bug."""


class NearDegenerateDenominator(QBathError, ArithmeticError):
    """The bath pole collides with an oscillator pole; closed forms are unusable.

    Use the quadrature routines instead.
    """


class ToleranceNotMet(QBathError, RuntimeError):
    """Adaptive quadrature exhausted its budget before reaching the tolerance."""

    def __init__(self, message, value=None, abserr=None):
        super().__init__(message)
        self.value = value
        self.abserr = abserr
