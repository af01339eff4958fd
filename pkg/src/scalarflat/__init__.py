"""Numerical toolkit for scalar-flat U(n)-invariant Kahler metrics.

Scalar-flatness of a radial Kahler potential reduces to a planar first-order
system for (x, y) above the admissible line 1 + x + y = 0.  The package
classifies initial data, integrates orbits with exact conservation of the
level function F = |x|^{1-n} |y|^n, reconstructs the potential derivatives
and curvature along them, locates (and stability-classifies) minimal
hyperspheres, extracts the ADM mass, and audits the Penrose-type
inequalities and the divisor / stable-sphere dichotomy.
"""

from .flow import Termination, TerminationKind, Trajectory, blowup_time, integrate, time_to_reach
from .penrose import (
    PenroseReport,
    dichotomy_report,
    euclidean_sphere_volume,
    minimal_sphere_volume,
    penrose_full,
    penrose_reduced,
)
from .phase import (
    Region,
    RegionLabel,
    classify,
    lambda_critical,
    level_gradient,
    level_value,
    minimal_line_residual,
    tangency_point,
    vector_field,
)
from .profile import (
    ClosedFormFamily,
    ClosedFormProfile,
    CriticalArcLimit,
    MetricProfile,
    TrajectoryProfile,
    adm_mass,
    ale_coefficient,
    closed_form_profile,
    derivative_chain,
    fyz_limit_check,
    profile_from_trajectory,
    radius_of_t,
    ricci_defect,
    scalar_curvature,
    t_of_radius,
)
from .spheres import (
    SphereReport,
    Stability,
    ball_volume,
    find_minimal_spheres,
    mean_curvature,
    mean_curvature_phase,
    sphere_area,
    stability_functional,
    stability_identity_residual,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedFormFamily",
    "ClosedFormProfile",
    "CriticalArcLimit",
    "MetricProfile",
    "PenroseReport",
    "Region",
    "RegionLabel",
    "SphereReport",
    "Stability",
    "Termination",
    "TerminationKind",
    "Trajectory",
    "TrajectoryProfile",
    "adm_mass",
    "ale_coefficient",
    "ball_volume",
    "blowup_time",
    "classify",
    "closed_form_profile",
    "derivative_chain",
    "dichotomy_report",
    "euclidean_sphere_volume",
    "find_minimal_spheres",
    "fyz_limit_check",
    "integrate",
    "lambda_critical",
    "level_gradient",
    "level_value",
    "mean_curvature",
    "mean_curvature_phase",
    "minimal_line_residual",
    "minimal_sphere_volume",
    "penrose_full",
    "penrose_reduced",
    "profile_from_trajectory",
    "radius_of_t",
    "ricci_defect",
    "scalar_curvature",
    "sphere_area",
    "stability_functional",
    "stability_identity_residual",
    "t_of_radius",
    "tangency_point",
    "time_to_reach",
    "vector_field",
    "__version__",
]
