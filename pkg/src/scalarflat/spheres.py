"""Geometry of the Euclidean hyperspheres under a reconstructed metric.

Area and enclosed volume of S^{2n-1}(r), its mean curvature, detection of the
minimal spheres along an orbit (zeros of the residual (n-1)x + ny + 2n - 1),
and their stability classification by the window n-1 < x <= 2n-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .flow import TerminationKind
from .phase import check_dimension, minimal_line_residual
from .profile import ClosedFormProfile, MetricProfile, TrajectoryProfile

__all__ = [
    "SphereReport",
    "Stability",
    "WEAK_STABILITY_TOL",
    "ball_volume",
    "find_minimal_spheres",
    "mean_curvature",
    "mean_curvature_phase",
    "sphere_area",
    "stability_functional",
    "stability_identity_residual",
]

# |x - (2n-1)| below this counts as the weakly stable boundary case
WEAK_STABILITY_TOL = 1e-9

ROOT_RESIDUAL_TOL = 1e-12


class Stability(str, Enum):
    STABLE = "Stable"
    WEAKLY_STABLE = "WeaklyStable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class SphereReport:
    """One minimal hypersphere: location, phase point, stability, area."""

    t_star: float
    x: float
    y: float
    stability: Stability
    area: float
    outermost: bool


def _area_constant(n: int) -> float:
    return (2.0 * math.pi) ** n / math.factorial(n - 1)


def sphere_area(profile: MetricProfile, t):
    """Area of S^{2n-1}(r(t)): (2 pi)^n / (n-1)! * u_t^{n-1} sqrt(2 u_tt)."""
    ch = profile.chain(t)
    n = profile.n
    return _area_constant(n) * ch.u_t ** (n - 1) * np.sqrt(2.0 * ch.u_tt)


def _lower_ut_limit(profile: MetricProfile) -> float:
    if isinstance(profile, ClosedFormProfile):
        fam = profile.family
        if fam.B > 0.0:
            return fam.A * fam.B ** (1.0 / fam.k)
        return 0.0
    if isinstance(profile, TrajectoryProfile):
        kind = profile.backward_end.kind
        if kind is TerminationKind.FINITE_TIME_BLOWUP:
            return 0.0  # u_t -> 0 at the escape end
        if kind is TerminationKind.STEP_UNDERFLOW:
            raise ValueError("lower end of the span not determinable (step underflow)")
        # line asymptote / time bound: u_t has converged to its infimum
        a = profile.t_span[0]
        return float(np.exp(np.asarray(profile.state(a)[2])))
    raise TypeError(f"unsupported profile type {type(profile)!r}")


def ball_volume(profile: MetricProfile, t):
    """Volume of the ball B_{2n}(r(t)): (2 pi)^n / n! * (u_t(t)^n - L).

    L is the limit of u_t^n at the lower end of the span (zero for metrics
    extending over the origin or ending at a finite-time escape).
    """
    n = profile.n
    lower = _lower_ut_limit(profile) ** n
    ut = np.exp(profile.state(t)[2])
    return (2.0 * math.pi) ** n / math.factorial(n) * (ut**n - lower)


def mean_curvature(profile: MetricProfile, t):
    """Mean curvature of S^{2n-1}(t):
    -(2(n-1) u_tt^2 + u_ttt u_t) / ((2n-1) sqrt(2) u_t u_tt^{3/2})."""
    ch = profile.chain(t)
    n = profile.n
    if np.any(ch.u_tt <= 0.0):
        raise ValueError("mean curvature needs u_tt > 0")
    num = 2.0 * (n - 1) * ch.u_tt**2 + ch.u_ttt * ch.u_t
    return -num / ((2 * n - 1) * math.sqrt(2.0) * ch.u_t * ch.u_tt**1.5)


def mean_curvature_phase(n: int, x, y, v):
    """Equivalent phase form -((n-1)x + ny + 2n-1) / ((2n-1) sqrt(2) e^{v/2} v_t^{1/2})."""
    n = check_dimension(n)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    v = np.asarray(v, dtype=float)
    w = 1.0 + x + y
    if np.any(w <= 0.0):
        raise ValueError("mean curvature needs 1 + x + y > 0")
    residual = (n - 1) * x + n * y + (2 * n - 1)
    return -residual / ((2 * n - 1) * math.sqrt(2.0) * np.exp(0.5 * v) * np.sqrt(w))


def stability_functional(profile: MetricProfile, t):
    """Second-variation sign functional u_t^2 u_tttt - 2(n-1)(4n-3) u_tt^3.

    At a minimal t the sign decides stability (>= 0 stable, < 0 unstable).
    """
    ch = profile.chain(t)
    n = profile.n
    return ch.u_t**2 * ch.u_tttt - 2.0 * (n - 1) * (4 * n - 3) * ch.u_tt**3


def stability_identity_residual(n: int, x: float, y: float, v: float = 0.0) -> float:
    """Defect of the closed-form factorization of the stability functional.

    Compares u_t^2 u_tttt - 2(n-1)(4n-3) u_tt^3 (via the derivative chain)
    against
        (x+y+1) [ R^2 - 6(n-1)(x+y+1) R + n(n-1)(-x-y)(x+y+1) ],
    R = (n-1)x + ny + 2n - 1, both scaled by e^{-3v}.  The e^{3v} factor of
    the chain route cancels identically, so the scaled residual does not
    depend on v; it should vanish to rounding for every admissible point.
    """
    n = check_dimension(n)
    x, y = float(x), float(y)
    w = 1.0 + x + y
    s = n * x + (n - 1) * y
    vtt = -w * s
    vttt = -vtt * s + w * w * (n * n * x + (n - 1) ** 2 * y)
    # u_t^2 u_tttt e^{-3v} and u_tt^3 e^{-3v} in chain variables
    lhs = (vttt + 3.0 * w * vtt + w**3) - 2.0 * (n - 1) * (4 * n - 3) * w**3
    residual = (n - 1) * x + n * y + (2 * n - 1)
    rhs = w * (residual**2 - 6.0 * (n - 1) * w * residual + n * (n - 1) * (-x - y) * w)
    return lhs - rhs


def _closed_form_grid(profile: ClosedFormProfile) -> np.ndarray:
    lo = max(profile.family.t_lower + 1e-6, -40.0)
    return np.linspace(lo, 40.0, 4001)


def _residual_samples(profile: MetricProfile) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(profile, TrajectoryProfile):
        s = profile.trajectory.samples
        ts = s[:, 0] - profile.t_shift
        x, y = s[:, 1], s[:, 2]
    elif isinstance(profile, ClosedFormProfile):
        ts = _closed_form_grid(profile)
        x, y, _ = profile.state(ts)
    else:
        raise TypeError(f"unsupported profile type {type(profile)!r}")
    res = minimal_line_residual_array(profile.n, x, y)
    scale = np.maximum(1.0, np.abs(x) + np.abs(y))
    return ts, res, scale


def minimal_line_residual_array(n: int, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (n - 1) * x + n * y + (2 * n - 1)


def _classify_window(n: int, x_star: float) -> Stability:
    if abs(x_star - (2 * n - 1)) <= WEAK_STABILITY_TOL:
        return Stability.WEAKLY_STABLE
    if x_star < 2 * n - 1:
        return Stability.STABLE
    return Stability.UNSTABLE


def find_minimal_spheres(profile: MetricProfile) -> list[SphereReport]:
    """Locate all minimal hyperspheres along the profile's orbit.

    Brackets sign changes of the minimal-line residual over the samples and
    refines each root to |residual| <= 1e-12 (scaled by the point magnitude).
    The weakly stable boundary is a tangency of the orbit with the minimal
    line, so samples where |residual| dips near zero without a sign change
    are refined through a bounded minimization of the squared residual.
    Stability follows the x-window; the root with no later minimal sphere is
    flagged outermost.
    """
    n = profile.n
    ts, res, scale = _residual_samples(profile)
    if len(ts) < 2:
        return []

    def residual_at(t: float) -> float:
        x, y, _ = profile.state(t)
        return float(minimal_line_residual_array(n, x, y))

    roots: list[float] = []
    # residual vanishing at a sample (seeds placed on the minimal line)
    node_root = np.abs(res) <= ROOT_RESIDUAL_TOL * scale
    roots.extend(float(t) for t in ts[node_root])
    # transversal crossings
    for i in range(len(ts) - 1):
        if node_root[i] or node_root[i + 1]:
            continue
        if res[i] * res[i + 1] < 0.0:
            roots.append(float(brentq(residual_at, ts[i], ts[i + 1], xtol=1e-14, rtol=1e-15)))
    # tangential dips (double roots at the weakly stable boundary); sampled
    # residual at such a dip is O(h^2), so candidates are gated loosely and
    # accepted only if the refined minimum sits on the line
    for i in range(1, len(ts) - 1):
        if node_root[i] or res[i - 1] * res[i + 1] < 0.0:
            continue
        if abs(res[i]) < 1e-2 * scale[i] and abs(res[i]) <= abs(res[i - 1]) and abs(res[i]) <= abs(res[i + 1]):
            fit = minimize_scalar(
                lambda t: residual_at(t) ** 2, bounds=(float(ts[i - 1]), float(ts[i + 1])), method="bounded",
                options={"xatol": 1e-13},
            )
            if abs(residual_at(fit.x)) <= 1e-10 * scale[i]:
                roots.append(float(fit.x))

    # cluster near-coincident candidates, keeping the best representative
    roots.sort()
    span = float(ts[-1] - ts[0])
    atol = 1e-7 * max(1.0, span)
    clustered: list[float] = []
    for r in roots:
        if clustered and r - clustered[-1] <= atol:
            if abs(residual_at(r)) < abs(residual_at(clustered[-1])):
                clustered[-1] = r
        else:
            clustered.append(r)

    reports = []
    for idx, t_star in enumerate(clustered):
        x_star, y_star, _ = (float(np.asarray(c)) for c in profile.state(t_star))
        residual = minimal_line_residual(n, x_star, y_star)
        if abs(residual) > 1e-10 * max(1.0, abs(x_star) + abs(y_star)):
            raise ArithmeticError(
                f"root refinement left residual {residual:.3e} at t={t_star}"
            )
        reports.append(
            SphereReport(
                t_star=t_star,
                x=x_star,
                y=y_star,
                stability=_classify_window(n, x_star),
                area=float(np.asarray(sphere_area(profile, t_star))),
                outermost=idx == len(clustered) - 1,
            )
        )
    return reports
