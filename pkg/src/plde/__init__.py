"""Denominator bounds for rational solutions of multivariate linear
difference equations with polynomial coefficients."""

from .bounds import (BoundOptions, BoundReport, StripResult, aperiodic_bound, bound_for_module,
                     combined_bound, dispersion_bound, lcm_combine, partial_multiple,
                     strip_rewrite)
from .equation import PLDE, load_equation
from .factored import FactoredPoly
from .geometry import (classify_module, corner_points, face_parallel_modules, lp_feasible,
                       witness_for_pair)
from .lattice import (IntLattice, ShiftCoset, UnimodularMatrix, hnf,
                      orthogonal_complement_lattice, saturation, unimodular_completion)
from .polyring import (Poly, RationalFunction, divide_exact, eval_poly, format_poly, gcd_poly,
                       normalize_primitive, parse_poly, parse_rational, shift_poly)
from .spread import (INFINITY, NEG_INFINITY, disp_k, invariance_lattice, shift_equiv,
                     spread_box_oracle, spread_pair)
from .transform import (NormalizedFrame, act_on_rational, build_normalizing_frame,
                        normalize_first_shift, transform_equation)
from .verify import InstanceProfile, check_bound_covers, check_solution, random_instance

__version__ = "0.1.0"
