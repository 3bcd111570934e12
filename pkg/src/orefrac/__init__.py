"""Exact arithmetic with rational matrix pseudodifferential operators over Q(x)."""

from .dirac import (IsotropyPair, is_skewadjoint_pair, is_total_derivative, membership_witness,
                    orthogonality_check, pairing, solve_preimage)
from .errors import OreFracError
from .expr import format_value, parse_expr
from .field import X, FieldElem
from .matfrac import (MatFraction, divide_out, factor_out_kernel_vector, frac_equal_mat,
                      from_rational_entries, is_minimal, minimal_decomposition)
from .matops import (DetValue, OpMatrix, adjoint_mat, common_right_multiple, diag_form,
                     dieudonne_det, inverse_unimodular, is_unimodular, mat_gcrd)
from .ore import D, OrePoly, adjoint, gcrd, gcrd_extended, lclm, left_divmod, right_divmod
from .ratfrac import ScalarFraction, simplify

__version__ = "0.1.0"

__all__ = [
    "FieldElem", "X", "OrePoly", "D", "right_divmod", "left_divmod", "gcrd", "gcrd_extended",
    "lclm", "adjoint", "ScalarFraction", "simplify", "OpMatrix", "DetValue", "dieudonne_det",
    "diag_form", "is_unimodular", "inverse_unimodular", "adjoint_mat", "mat_gcrd",
    "common_right_multiple", "MatFraction", "minimal_decomposition", "is_minimal", "divide_out",
    "frac_equal_mat", "from_rational_entries", "factor_out_kernel_vector", "IsotropyPair",
    "pairing", "is_total_derivative", "is_skewadjoint_pair", "membership_witness",
    "orthogonality_check", "solve_preimage", "parse_expr", "format_value", "OreFracError",
]
