"""Holonomic systems for definite integrals.

Exact Weyl-algebra arithmetic, Gröbner bases for left ideals and modules,
annihilators of powers of polynomials, b-functions, integration and
restriction of D-modules, and pipelines that turn a definite integral into a
holonomic differential or difference-differential system.
"""

from .annihilators import (
                           NotHolonomicError,
                           SingularHypersurfaceError,
                           ann_delta_graph,
                           ann_delta_hypersurface,
                           ann_fs,
                           ann_log_power,
                           ann_times_powers,
                           bs_polynomial,
                           graph_ideal,
                           is_nonsingular,
                           omega_check,
                           restrict_to_Dns,
                           specialize,
)
from .bfunction import BFunction, from_roots, max_integral_root
from .difference import DifferenceDiffOp, mu_inverse, mu_map, nm_normalize
from .groebner import (
                           DEFAULT_BOUNDS,
                           Bounds,
                           GroebnerBasis,
                           ModuleVector,
                           ResourceLimitError,
                           buchberger,
                           eliminate,
                           normal_form,
)
from .ideal import (
                           WeylIdeal,
                           char_dimension,
                           characteristic_ideal,
                           dimension,
                           exp_twist,
                           intersect,
                           is_holonomic,
                           quotient,
                           right_divide,
)
from .integration import (
                           IntegrationResult,
                           b_function_weight,
                           integration_ideal,
                           restriction_ideal,
                           tensor_product_ideal,
)
from .orders import (
                           ModuleOrder,
                           TermOrder,
                           derivation_degree_order,
                           elimination_order,
                           grevlex,
                           total_degree_order,
                           weight_order,
)
from .parse import ParseError, format_element, parse_operator, parse_polynomial
from .pipelines import (
                           DifferenceSystem,
                           IntegralProblem,
                           OmegaAssertionMissing,
                           OmegaCheckFailed,
                           base_from_difference,
                           bessel_operators,
                           definite_integral_ideal,
                           difference_system_for_integral,
)
from .weyl import (
                           Series,
                           VarTable,
                           WeylElement,
                           apply_to_polynomial,
                           apply_to_series,
                           diff,
                           fourier,
                           initial_form,
                           ord_w,
                           principal_symbol,
                           substitute,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
