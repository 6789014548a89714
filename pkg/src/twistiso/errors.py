"""Exception types shared by every module of the package."""

from __future__ import annotations


class TwistIsoError(Exception):
    """Base class for all library errors."""


class NonDivisible(TwistIsoError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, remainder):
        super().__init__(f"division is not exact, remainder {remainder}")
        self.remainder = remainder


class NonSquareLeading(TwistIsoError):
    """Leading coefficient or exponent of a series has no exact square root."""


class Truncated(TwistIsoError):
    """Requested coefficient lies below the known truncation order."""


class SingularDiagonal(TwistIsoError):
    """Lower triangular system with a vanishing diagonal."""


class CoincidentNodes(TwistIsoError):
    """Two Vandermonde nodes coincide."""

    def __init__(self, i: int, j: int):
        super().__init__(f"nodes {i} and {j} coincide")
        self.i = i
        self.j = j


class IrrationalRoots(TwistIsoError):
    """Polynomial does not split into rational linear factors."""


class IrrationalPower(TwistIsoError):
    """A fractional power of a rational number is not rational."""


class InconsistentIntegration(TwistIsoError):
    """A gradient system failed its mixed partial consistency test."""


class NonPolynomialDet(TwistIsoError):
    """Determinant of a connection kept finite poles."""


class ValidationError(TwistIsoError):
    """Inputs violate a structural invariant."""
