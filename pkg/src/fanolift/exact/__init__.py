"""Exact arithmetic substrate: polynomials, linear algebra, elimination."""
from .elimination import (bivariate_root_up_to_scalar, discriminant, interpolate, resultant,
                          resultant_bareiss, root_up_to_scalar, sylvester_matrix)
from .linalg import bareiss_det, det_rational, kernel_basis, rank, rref
from .poly import BiPoly, UniPoly, fraction_to_str, parse_fraction, proportional
from .reconstruct import rational_reconstruct, to_fraction

__all__ = [
    "BiPoly", "UniPoly", "bareiss_det", "bivariate_root_up_to_scalar", "det_rational",
    "discriminant", "fraction_to_str", "interpolate", "kernel_basis", "parse_fraction",
    "proportional", "rank", "rational_reconstruct", "resultant", "resultant_bareiss",
    "root_up_to_scalar", "rref", "sylvester_matrix", "to_fraction",
]
