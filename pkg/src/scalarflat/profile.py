"""Reconstruction of the Kahler potential derivatives along phase orbits.

Every geometric quantity of the radial metric is an algebraic expression in
the phase state (x, y, v): with w = 1 + x + y,

    v_t   = w
    v_tt  = -w (n x + (n-1) y)
    v_ttt = -v_tt (n x + (n-1) y) + w^2 (n^2 x + (n-1)^2 y)
    u_t   = e^v,   u_tt = w e^v,   u_ttt = (v_tt + w^2) e^v,
    u_tttt = (v_ttt + 3 w v_tt + w^3) e^v.

Profiles come from integrated trajectories (interpolated state) or from the
closed-form families u_t = A (B + e^{kt})^{1/k}, k in {n-1, n}, whose phase
curves lie on the coordinate axes.  Derivative accessors always use the
algebraic chain, never numerical differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flow import Termination, TerminationKind, Trajectory, integrate
from .phase import check_dimension, lambda_critical, level_value

__all__ = [
    "ClosedFormFamily",
    "ClosedFormProfile",
    "CriticalArcLimit",
    "MetricProfile",
    "TrajectoryProfile",
    "adm_mass",
    "ale_coefficient",
    "closed_form_profile",
    "derivative_chain",
    "fyz_limit_check",
    "profile_from_trajectory",
    "radius_of_t",
    "ricci_defect",
    "scalar_curvature",
    "t_of_radius",
]


def t_of_radius(r):
    """Log-radial coordinate t = log(r^2 / 2) of the Euclidean radius r = |z|."""
    r = np.asarray(r, dtype=float)
    return np.log(r * r / 2.0)


def radius_of_t(t):
    """Euclidean radius r = sqrt(2 e^t) of the log-radial coordinate t."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(2.0 * np.exp(t))


@dataclass(frozen=True)
class ChainValues:
    """Algebraic derivative chain evaluated at one or more times."""

    v_t: np.ndarray
    v_tt: np.ndarray
    v_ttt: np.ndarray
    u_t: np.ndarray
    u_tt: np.ndarray
    u_ttt: np.ndarray
    u_tttt: np.ndarray


def derivative_chain(n: int, x, y, v) -> ChainValues:
    n = check_dimension(n)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    v = np.asarray(v, dtype=float)
    w = 1.0 + x + y
    s = n * x + (n - 1) * y
    vtt = -w * s
    vttt = -vtt * s + w * w * (n * n * x + (n - 1) ** 2 * y)
    ut = np.exp(v)
    return ChainValues(
        v_t=w,
        v_tt=vtt,
        v_ttt=vttt,
        u_t=ut,
        u_tt=w * ut,
        u_ttt=(vtt + w * w) * ut,
        u_tttt=(vttt + 3.0 * w * vtt + w**3) * ut,
    )


class MetricProfile:
    """Common accessor layer; subclasses provide ``state(t) -> (x, y, v)``."""

    n: int

    @property
    def t_span(self) -> tuple[float, float]:
        raise NotImplementedError

    def state(self, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        raise NotImplementedError

    def chain(self, t) -> ChainValues:
        x, y, v = self.state(t)
        return derivative_chain(self.n, x, y, v)

    def v_t(self, t):
        x, y, _ = self.state(t)
        return 1.0 + x + y

    def v_tt(self, t):
        return self.chain(t).v_tt

    def v_ttt(self, t):
        return self.chain(t).v_ttt

    def u_t(self, t):
        return np.exp(self.state(t)[2])

    def u_tt(self, t):
        return self.chain(t).u_tt

    def u_ttt(self, t):
        return self.chain(t).u_ttt

    def u_tttt(self, t):
        return self.chain(t).u_tttt

    def u_t_minus_u_tt(self, t):
        """u_t - u_tt = -e^v (x + y), evaluated without cancellation."""
        x, y, v = self.state(t)
        return -np.exp(v) * (x + y)


@dataclass(frozen=True)
class TrajectoryProfile(MetricProfile):
    """Profile backed by an integrated trajectory, optionally re-normalized.

    ``t_shift``/``v_shift`` move the normalization point: profile time t maps
    to trajectory time t + t_shift and v is reduced so that v(0) = 0 at the
    new origin.  Re-normalizing at a minimal sphere reproduces the convention
    u_t = 1 on the sphere used by the mass and volume formulas.
    """

    trajectory: Trajectory
    t_shift: float = 0.0
    v_shift: float = 0.0

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.trajectory.n

    @property
    def t_span(self) -> tuple[float, float]:
        a, b = self.trajectory.t_span
        return (a - self.t_shift, b - self.t_shift)

    @property
    def forward_end(self) -> Termination:
        return self.trajectory.forward_end

    @property
    def backward_end(self) -> Termination:
        return self.trajectory.backward_end

    def state(self, t):
        x, y, v = self.trajectory.state(np.asarray(t, dtype=float) + self.t_shift)
        return x, y, v - self.v_shift

    def renormalized(self, t0: float) -> "TrajectoryProfile":
        """Same orbit with the normalization point moved to profile time t0."""
        v0 = float(np.asarray(self.state(t0)[2]))
        return TrajectoryProfile(
            trajectory=self.trajectory,
            t_shift=self.t_shift + t0,
            v_shift=self.v_shift + v0,
        )


def profile_from_trajectory(traj: Trajectory) -> TrajectoryProfile:
    return TrajectoryProfile(trajectory=traj)


@dataclass(frozen=True)
class ClosedFormFamily:
    """Exact scalar-flat family u_t = A (B + e^{kt})^{1/k} with k in {n-1, n}.

    Scalar-flat for every (k, A, B); Ricci-flat exactly when k = n; flat when
    B = 0.  The phase curve lies on the y axis for k = n-1 and on the x axis
    for k = n.  For -1 < B < 0 the domain is t > log(-B)/k.
    """

    n: int
    k: int
    A: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        n = check_dimension(self.n)
        if self.k not in (n - 1, n):
            raise ValueError(f"k must be n-1 or n, got k={self.k} with n={n}")
        if not self.A > 0.0:
            raise ValueError(f"amplitude A must be positive, got {self.A}")
        if not self.B > -1.0:
            raise ValueError(f"B must exceed -1, got {self.B}")

    @property
    def t_lower(self) -> float:
        if self.B < 0.0:
            return math.log(-self.B) / self.k
        return -math.inf


@dataclass(frozen=True)
class ClosedFormProfile(MetricProfile):
    family: ClosedFormFamily

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.family.n

    @property
    def t_span(self) -> tuple[float, float]:
        return (self.family.t_lower, math.inf)

    def state(self, t):
        fam = self.family
        t = np.asarray(t, dtype=float)
        if np.any(t <= fam.t_lower):
            raise ValueError(
                f"t={t} outside the family domain t > {fam.t_lower} (B={fam.B})"
            )
        # moving coordinate -B/(B + e^{kt}), evaluated via B e^{-kt} to stay
        # accurate for large t
        be = fam.B * np.exp(-fam.k * t)
        coord = -be / (1.0 + be)
        v = math.log(fam.A) + t + np.log1p(be) / fam.k
        zeros = np.zeros_like(coord)
        if fam.k == fam.n - 1:
            return zeros, coord, v
        return coord, zeros, v


def closed_form_profile(fam: ClosedFormFamily) -> ClosedFormProfile:
    return ClosedFormProfile(family=fam)


def scalar_curvature(profile: MetricProfile, t):
    """Scalar curvature of the reconstructed metric at t (zero on exact orbits)."""
    ch = profile.chain(t)
    n = profile.n
    if np.any(ch.v_t <= 0.0):
        raise ValueError("scalar curvature needs v_t > 0 (Kahler positivity)")
    num = (
        n * (n - 1) * (1.0 - ch.v_t) * ch.v_t
        - (2 * n - 1) * ch.v_tt
        - (ch.v_ttt * ch.v_t - ch.v_tt**2) / ch.v_t**2
    )
    return num / (ch.v_t * ch.u_t)


def ricci_defect(profile: MetricProfile, t):
    """Radial Ricci-flatness defect n v_t + v_tt/v_t - n (identically the phase y)."""
    ch = profile.chain(t)
    n = profile.n
    if np.any(ch.v_t <= 0.0):
        raise ValueError("Ricci defect needs v_t > 0")
    return n * ch.v_t + ch.v_tt / ch.v_t - n


def ale_coefficient(profile: MetricProfile) -> float:
    """Limit of u_t e^{-t} at the AE end (finite and positive for AE profiles)."""
    if isinstance(profile, ClosedFormProfile):
        return float(profile.family.A)
    top = profile.t_span[1]
    x, y, v = profile.state(top)
    return float(np.exp(np.asarray(v) - top))


def _mass_integrand(profile: MetricProfile, t: np.ndarray) -> np.ndarray:
    n = profile.n
    x, y, v = profile.state(t)
    return -np.exp((n - 2) * t + v) * (x + y) / (n - 1)


def _eliminate_slowest_mode(t1, g1, t2, g2) -> float:
    # removes an a e^{-t} correction from two samples of g(t) = m + a e^{-t} + ...
    e1, e2 = math.exp(-t1), math.exp(-t2)
    return (g2 * e1 - g1 * e2) / (e1 - e2)


def adm_mass(profile: MetricProfile) -> tuple[float, float | None]:
    """ADM mass by Richardson extrapolation of e^{(n-2)t}(u_t - u_tt)/(n-1).

    Returns ``(m_numeric, m_paper)``: the extrapolated limit, and for
    trajectory profiles the leading-order value -y(0)/(n-1) in the t = 0
    normalization (None for closed forms).  The limit exists for profiles
    with an asymptotically Euclidean forward end.
    """
    if isinstance(profile, ClosedFormProfile):
        ts = np.array([10.0, 20.0, 40.0])
        m_paper: float | None = None
    else:
        top = profile.t_span[1]
        x_top, y_top, _ = profile.state(top)
        at_origin = max(abs(float(np.asarray(x_top))), abs(float(np.asarray(y_top)))) < 1e-10
        if profile.forward_end.kind is not TerminationKind.CONVERGED_TO_ORIGIN and not at_origin:
            raise ValueError(
                "ADM mass needs an asymptotically Euclidean end "
                f"(forward end is {profile.forward_end.kind.value})"
            )
        big = min(40.0, top)
        if big < 4.0:
            raise ValueError(f"forward span too short for mass extrapolation (t <= {big})")
        # ladder near the top of the span: by the time the origin event fires
        # the corrections are already at threshold size, so the useful rungs
        # are the deepest ones
        ts = big * np.array([0.75, 0.875, 1.0])
        m_paper = float(-np.asarray(profile.state(0.0)[1]) / (profile.n - 1))

    g = _mass_integrand(profile, ts)
    m12 = _eliminate_slowest_mode(ts[0], g[0], ts[1], g[1])
    m23 = _eliminate_slowest_mode(ts[1], g[1], ts[2], g[2])
    if abs(m23 - m12) > 1e-6 * max(abs(m12), abs(m23), 1e-12):
        raise ArithmeticError(
            f"ADM mass extrapolation did not converge ({m12:.6g} vs {m23:.6g})"
        )
    return float(m23), m_paper


@dataclass(frozen=True)
class CriticalArcLimit:
    """Backward limit estimate of a critical-level arc."""

    x: float
    y: float
    t_at_closest: float
    forward_end: Termination


def fyz_limit_check(n: int, seed=None, t_min: float = -1e5, tol: float = 1e-12) -> CriticalArcLimit:
    """Backward limit of the complete critical-level arc (the two-ended family).

    Integrates backward from a seed on the critical level between the origin
    and the tangency point (default midpoint) and returns the sampled point
    closest to the admissible line; the exact arc limits to the tangency
    point (n-1, -n).  The forward end must converge to the origin (AE end).
    """
    n = check_dimension(n)
    lam_c = lambda_critical(n)
    if seed is None:
        x0 = 0.5 * (n - 1)
        y0 = -lam_c ** (1.0 / n) * x0 ** ((n - 1.0) / n)
    else:
        x0, y0 = float(seed[0]), float(seed[1])
        on_arc = 0.0 < x0 < n - 1 and y0 < 0.0
        lam = level_value(n, x0, y0) if x0 != 0.0 or y0 != 0.0 else math.nan
        if not on_arc or not abs(lam / lam_c - 1.0) <= 1e-9:
            raise ValueError(f"seed ({x0}, {y0}) is not on the critical-level arc")
    traj = integrate(n, (x0, y0), t_max=40.0, t_min=t_min, tol=tol)
    s = traj.samples
    w = 1.0 + s[:, 1] + s[:, 2]
    i = int(np.argmin(w))
    return CriticalArcLimit(
        x=float(s[i, 1]),
        y=float(s[i, 2]),
        t_at_closest=float(s[i, 0]),
        forward_end=traj.forward_end,
    )
