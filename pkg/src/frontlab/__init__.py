"""frontlab: wave-front singularity analysis for parametrized surfaces.

Parse closed-form surfaces, trace their singular curves, classify the
singular points (cuspidal edges, swallowtails, cuspidal cross caps and
the degenerate frontal cases), compute the curvature invariants of the
singularity, and decide boundedness / rational boundedness / rational
continuity of the Gaussian and mean curvature.
"""

__version__ = "0.1.0"

from .ambient import (AmbientChart, cross_g, covariant_derivative, det_g,
                      euclidean_chart, hyperbolic_chart, inner_product,
                      sectional_curvature, sphere_chart)
from .boundedness import (BlowupProbe, BoundednessVerdict, ProbeConfig,
                          blowup_probe, boundedness_report, curvature_values,
                          gauss_map_singular)
from .classify import Classification, classify_point, is_front_at, psi_ccr_jet
from .errors import FrontlabError
from .expressions import Expression, evaluate_jet, parse_expression
from .frontal import (FrontalSurface, SingularSample, local_point,
                      newton_to_curve, null_direction, resolve_normal,
                      singular_curve_jets, trace_singular_curve)
from .invariants import (FirstKindInvariants, InvariantProfile,
                         SecondKindInvariants, first_kind_invariants,
                         first_kind_profile, hat_values, kappa_H, kappa_c,
                         kappa_nu, kappa_s, planar_cusp_curvature, tau_c,
                         tau_s)
from .jets import Jet, deflate
from .slicing import SliceCurve, orthogonal_slice, slice_cusp_check
from .specfile import SurfaceSpec, load_surface_spec, parse_surface_spec

__all__ = [name for name in dir() if not name.startswith("_")]
