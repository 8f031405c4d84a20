"""Numerical toolkit for comparison geometry in constant-curvature model spaces."""

from .errors import (AccuracyError, BoundaryError, CatkError, ConvexificationFailure, HypothesisViolation,
                     ImmersionFailure, InfeasibleError, InvalidInputError, NumericalDomainError, ResolutionError,
                     TopologyError, TransversalityError)
from .model_space import (ComparisonTriangle, SpacePoint, TangentVec, angle, comparison_triangle, dist, exp_map,
                          geodesic_point, thin_triangle_check)
from .curves import (Kappa, PolyCurve, SmoothCurve, chord_convexity_check, chord_curvature_estimate,
                     inscribe_polygon, integrate_curvature_curve, osc_curvature_estimate)
from .comparison import (ArmLemmaInstance, SchurInstance, arm_compare, arm_open, convex_rigidity_check,
                         convexify_majorant, fan_development, gauss_bonnet_curve, schur_compare)
from .surfaces import (curvature_integrals, fundamental_forms, intrinsic_curvature, parallel_surface,
                       parallel_sweep, planar_section, surface_from_spec)

__version__ = "0.1.0"
