"""Numerical and symbolic toolkit for the noncommutative cylinder.

Layers, bottom up:

* ``fields`` / ``quadrature`` -- expression trees for smooth one-variable
  functions with exact derivatives, declared supports, and batched
  adaptive Gauss-Kronrod integration;
* ``grammar`` -- the textual expression language used by the CLI and the
  serialisation formats;
* ``algebra`` -- the twisted-product algebra: product, involution,
  derivations, trace, cyclic two-cocycle;
* ``projections`` -- the explicit projection family, its traces and
  integer cocycle pairings;
* ``bimodule_types`` / ``bimodules`` -- sections, parametrised left/right
  actions, inner products, module isomorphisms, hermitian structures;
* ``connections`` -- constant-curvature connections and the parameter
  solver;
* ``riemannian`` -- metric calculus: Koszul connection coefficients,
  Gaussian curvature, total curvature;
* ``checks`` / ``report`` / ``cli`` -- identity suites, rendering, and the
  command-line surface.
"""

from .algebra import (CylinderElement, cocycle_psi, commutator_with_u,
                      distance, element, element_from_dict, element_to_dict,
                      from_mode, multiply, star, trace, zero_element)
from .algebra import add as element_add
from .algebra import d1, d2
from .bimodule_types import (BimoduleParams, LeftParams, RightParams, Section,
                             default_bimodule_params, section, zero_section)
from .bimodules import (elements_from_section, herm_left, herm_right,
                        inner_left, inner_right, left_act, param_iso,
                        right_act, section_distance, section_from_elements)
from .connections import (ConnParams, ConnectionSolution,
                          check_left_leibniz, check_right_leibniz,
                          constant_curvature_connection, curvature_commutator,
                          induced_algebra_connection, induced_derivation,
                          measured_curvature, nabla1, nabla2,
                          solve_bimodule_connection)
from .errors import (CylinderError, DegenerateParamsError, HbarMismatchError,
                     NonConvergentError, NonSmoothPointError,
                     NotIntegrableError, NotTraceClassError, ParseError,
                     RatioNotRationalError, SingularMetricError,
                     ToleranceNotMetError)
from .fields import FieldExpr, Support
from .grammar import parse_expr, to_text
from .projections import (BumpPair, ProjectionFamilyElement, build_bump_pair,
                          build_fn_gn, build_pn, chern_number,
                          idempotence_residual, projector_condition_residuals,
                          selfadjoint_residual, shifted_projection, trace_pn)
from .quadrature import (DEFAULT_QUADRATURE, QuadratureConfig, field_distance,
                         integrate, integrate_callable, semantically_equal)
from .riemannian import (Christoffel, CurvatureReport, Metric, TotalCurvature,
                         christoffel, conformal_metric, curvature_tensor,
                         inverse_metric, perturbation_invariance,
                         total_curvature, validate_metric,
                         verify_pseudo_riemannian)

__version__ = "0.1.0"
