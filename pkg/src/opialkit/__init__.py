"""Widder derivatives, Wronskian kernels and weighted Opial-type inequalities."""

from .errors import *  # noqa: F401,F403
from .funcrep import (EXACT, FALLBACK, Interval, SmoothFunction, builtin_family,
                      check_continuity, from_callable, linear_combination,
                      numeric_derivative)
from .opial import (LOWER, NA, UPPER, ExponentTriple, InequalityReport, OpialProblem,
                    Regime, classify_regime, extreme_bound, extreme_integral,
                    lhs_functional, opial_constant, p_weight, p_weight_joint_power,
                    rhs_core, sup_norm, verify_classical, verify_main, verify_r2,
                    verify_regime)
from .quad import (DEFAULT_SPEC, BatchResult, IntegralResult, QuadratureSpec,
                   integrate, integrate_batch, integrate_nested)
from .taylor import TaylorExpansion, represent_from_h, taylor_eval, taylor_remainder
from .widder import (BasisFamily, KernelHandle, function_kernel, greens_function,
                     greens_kernel, grid_kernel, kernel_g, parse_basis, unit_kernel,
                     validate_family, widder_derivative, widder_kernel, wronskian)

__version__ = "0.1.0"
