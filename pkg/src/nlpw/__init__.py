"""nlpw: optimal constants of the nonlocal nonlinear Poincare-Wirtinger inequality.

Generalized (p,q)-trigonometric functions, the auxiliary integral H, a discrete
variational solver for lambda_alpha(p, q, r) and the saturation analysis in alpha.
"""

from .eigen import (
    EigenResult,
    GridFunction,
    RepresentationCheck,
    SymmetryDiagnostics,
    el_residual,
    extrapolate_lambda,
    lambda_P_closed,
    lambda_T_closed,
    minimize_lambda_alpha,
    norm_from_representation,
    odd_branch_lambda,
    q_norm,
    r_average,
    rayleigh_gradient,
    rayleigh_quotient,
    representation_check,
    representation_lambda,
    rescale_interval,
    symmetry_diagnostics,
)
from .errors import (
    BracketingError,
    DivergentIntegralError,
    NLPWError,
    ParameterDomainError,
    PoleError,
    QuadratureInputError,
    ReportFormatError,
    SolverConvergenceError,
    ZeroFunctionError,
)
from .gtrig import Params, cos_pq, dirichlet_eigenpair, incomplete_F, pi_pq, sin_pq
from .hfun import (
    H_grid,
    H_val,
    HEval,
    K_at_zero,
    K_val,
    R_val,
    h_val,
    k_dips_at_zero,
    proof_aux,
)
from .quad import QuadResult, QuadratureConfig, gauss_legendre, integrate_unit
from .report import emit
from .saturation import (
    SaturationReport,
    alpha_c_closed_rp1,
    alpha_c_lower_bound,
    find_alpha_c,
    saturation_report,
    sweep_alpha,
)
from .verify import VerifyReport, run_verify_suite
from .version import __version__

__all__ = [
    "__version__",
    # special functions
    "Params",
    "pi_pq",
    "incomplete_F",
    "sin_pq",
    "cos_pq",
    "dirichlet_eigenpair",
    # quadrature
    "QuadratureConfig",
    "QuadResult",
    "integrate_unit",
    "gauss_legendre",
    # H
    "HEval",
    "R_val",
    "h_val",
    "H_val",
    "H_grid",
    "K_at_zero",
    "K_val",
    "k_dips_at_zero",
    "proof_aux",
    # eigenvalue solver
    "GridFunction",
    "EigenResult",
    "SymmetryDiagnostics",
    "RepresentationCheck",
    "rayleigh_quotient",
    "rayleigh_gradient",
    "q_norm",
    "r_average",
    "el_residual",
    "minimize_lambda_alpha",
    "extrapolate_lambda",
    "odd_branch_lambda",
    "lambda_T_closed",
    "lambda_P_closed",
    "representation_lambda",
    "norm_from_representation",
    "representation_check",
    "symmetry_diagnostics",
    "rescale_interval",
    # saturation
    "SaturationReport",
    "find_alpha_c",
    "alpha_c_closed_rp1",
    "alpha_c_lower_bound",
    "sweep_alpha",
    "saturation_report",
    # reporting
    "emit",
    "VerifyReport",
    "run_verify_suite",
    # errors
    "NLPWError",
    "ParameterDomainError",
    "PoleError",
    "QuadratureInputError",
    "DivergentIntegralError",
    "ZeroFunctionError",
    "SolverConvergenceError",
    "BracketingError",
    "ReportFormatError",
]
