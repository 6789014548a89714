"""Exact arithmetic kernel: rationals, polynomials, series, small matrices, solvers."""

from .mat2 import Mat2
from .multipoly import MultiPoly, multipoly_integrate
from .poly import UniPoly, exact_div, rational_roots
from .ratfunc import RatFunc
from .rational import Fraction, as_rational, coerce, fmt, rational_root, rational_sqrt
from .series import HalfSeries, doubled, residue_at_infinity, series_sqrt
from .dense import dense_inverse, dense_solve, is_symplectic, matmul, matrix_rank, symplectic_form, transpose
from .solvers import (
    lagrange_basis,
    toeplitz_lower_solve,
    toeplitz_unit_inverse_coeffs,
    vandermonde_solve,
)

__all__ = [
    "Fraction",
    "HalfSeries",
    "Mat2",
    "MultiPoly",
    "RatFunc",
    "UniPoly",
    "as_rational",
    "coerce",
    "dense_inverse",
    "dense_solve",
    "doubled",
    "exact_div",
    "fmt",
    "is_symplectic",
    "matmul",
    "matrix_rank",
    "symplectic_form",
    "transpose",
    "lagrange_basis",
    "multipoly_integrate",
    "rational_root",
    "rational_roots",
    "rational_sqrt",
    "residue_at_infinity",
    "series_sqrt",
    "toeplitz_lower_solve",
    "toeplitz_unit_inverse_coeffs",
    "vandermonde_solve",
]
