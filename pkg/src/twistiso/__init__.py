"""Exact algebra for twisted rank-2 connections and the Painleve I hierarchy.

Submodules, in pipeline order:

``algebra``         rationals, polynomials, half-integer series, solvers
``connection``      normalized connections, spectral curve, Birkhoff times
``oper``            Darboux charts and the oper gauge
``deformation``     auxiliary matrices, Hamiltonians, zero curvature
``reduction``       trivial times, shifted coordinates, reduced Hamiltonians
``correspondence``  geometric, Lax and isospectral coordinates
"""

from . import algebra, connection, correspondence, deformation, oper, reduction
from .connection import IrregularTimes, TwistedConnection, spectral_data
from .deformation import DeformationVector, general_hamiltonian, zero_curvature_residual
from .errors import TwistIsoError
from .oper import DarbouxChart, build_oper, connection_from_chart, gauge_backward
from .reduction import ReducedTimes, reduced_hamiltonian

__version__ = "0.1.0"

__all__ = [
    "DarbouxChart",
    "DeformationVector",
    "IrregularTimes",
    "ReducedTimes",
    "TwistIsoError",
    "TwistedConnection",
    "__version__",
    "algebra",
    "build_oper",
    "connection",
    "connection_from_chart",
    "correspondence",
    "deformation",
    "gauge_backward",
    "general_hamiltonian",
    "oper",
    "reduced_hamiltonian",
    "reduction",
    "spectral_data",
    "zero_curvature_residual",
]
