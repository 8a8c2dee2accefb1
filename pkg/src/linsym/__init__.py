"""Point-symmetry classification of y'' = A y' + B y for constant 2x2 A, B.

Exact arithmetic over Q or a single quadratic field Q(sqrt d) throughout;
floating point only appears in the numeric verification layer.
"""

from .canonical import CaseJ1, CaseJ2, CaseJ3, Commuting, canonicalize
from .classify import (
    ClassificationReport,
    CoeffSpace,
    Label,
    branch_coeff_space,
    classify_canonical,
    determining_residuals,
    h_values,
    solve_coeff_space,
    x1_field,
    x2_field,
)
from .errors import LinsymError
from .expoly import ExpPoly
from .linalg import Mat2, Vec2, commutator, mat_exp_numeric, real_jordan
from .pipeline import RunConfig, classify_system, parse_input, run_report
from .reduction import (
    ExpShift,
    LinearChange,
    ParticularShift,
    ScaleX,
    ShiftX,
    SystemSpec,
    TransformChain,
    apply_step,
    bbar_of_t,
    commute_test,
    homogenize,
    pullback_vf,
    reduce_to_M,
)
from .scalar import Scalar
from .vectorfield import VectorField
from .verify import admittance_residual, flow_check, rk4_solve

__all__ = [
    "CaseJ1", "CaseJ2", "CaseJ3", "ClassificationReport", "CoeffSpace", "Commuting", "ExpPoly",
    "ExpShift", "Label", "LinearChange", "LinsymError", "Mat2", "ParticularShift", "RunConfig",
    "Scalar", "ScaleX", "ShiftX", "SystemSpec", "TransformChain", "Vec2", "VectorField",
    "admittance_residual", "apply_step", "bbar_of_t", "branch_coeff_space", "canonicalize",
    "classify_canonical", "classify_system", "commutator", "commute_test", "determining_residuals",
    "flow_check", "h_values", "homogenize", "mat_exp_numeric", "parse_input", "pullback_vf",
    "real_jordan", "reduce_to_M", "rk4_solve", "run_report", "solve_coeff_space", "x1_field",
    "x2_field",
]
