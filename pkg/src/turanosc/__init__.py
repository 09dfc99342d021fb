"""Convex-domain geometry, boundary L^q norms, and certified
Turan-type oscillation bounds for polynomials with constrained zeros."""

__version__ = "0.1.0"

from .geometry import (BoundaryParametrization, ConvexDomain, Disk,
                       DomainError, Ellipse, GeometrySummary, Polygon,
                       domain_from_dict, load_domain, regular_polygon)
from .polynomials import MonicPolynomial, PoleError, load_zeros, zeros_from_dict
from .norms import (BoundaryMeasureReport, QuadratureConfig, boundary_lq_norm,
                    boundary_sup_norm, gabriel_check, gabriel_lower_check,
                    h_mass_check, h_set, markov_sup_check, nikolskii_check,
                    oscillation_ratio)
from .capacity import (FeketeResult, MinimaxResult, RealIntervalUnion,
                       Segment, chebyshev_min_norm, polya_check,
                       regular_kgon_transfinite_diameter,
                       segment_chebyshev_lower, transfinite_diameter_exact,
                       transfinite_diameter_fekete)
from .bounds import (BoundCertificate, best_lower_bound, circular_bound,
                     depth_profile, depth_profile_check,
                     depth_profile_derivative, erod_ellipse, gabriel_lower,
                     halasz_revesz, levenberg_poletsky,
                     localdepth_pointwise_check, malik_govil, malik_lq_sup,
                     posdepth_bound, posdepth_bound_sharp, turan_disk,
                     turan_interval, upper_construction)
from .optimizer import (SearchConfig, SearchResult, gradient_consistency,
                        minimize_oscillation, verify_suite)

__all__ = [name for name in dir() if not name.startswith("_")]
