"""Exact linear algebra over Z, Q, Z/n and F_p."""

from .matrix import QQ, ZZ, BadScalar, BaseScalar, GF, IntMatrix, MatrixError, Zmod, as_intmatrix, parse_scalar
from .smith import (SmithForm, column_hnf, integer_kernel, integer_rank, invariant_factors,
                    lattice_contains, lattice_coordinates, smith_normal_form, solve_in_lattice)
from .fields import kernel_over_field, rank_over, rref_fraction, rref_mod
from .modules import (DimensionMismatch, FpModule, Kernel, NotAComplex, cokernel, complex_cohomology,
                      free_module, from_structure, kernel_basis, kernel_lattice_mod, lattice_quotient,
                      tensor_module, tor1, tor1_via_resolution)
from .rational import ModpEchelon, RationalRREF, certified_rref, rational_rank

__all__ = [
    "BadScalar", "BaseScalar", "DimensionMismatch", "FpModule", "GF", "IntMatrix", "Kernel",
    "MatrixError", "ModpEchelon", "NotAComplex", "QQ", "RationalRREF", "SmithForm", "ZZ",
    "Zmod", "as_intmatrix", "certified_rref", "cokernel", "column_hnf", "complex_cohomology",
    "free_module", "from_structure", "integer_kernel", "integer_rank", "invariant_factors",
    "kernel_basis", "kernel_lattice_mod", "kernel_over_field", "lattice_contains",
    "lattice_coordinates", "lattice_quotient", "parse_scalar", "rank_over", "rational_rank",
    "rref_fraction", "rref_mod", "smith_normal_form", "solve_in_lattice", "tensor_module",
    "tor1", "tor1_via_resolution",
]
