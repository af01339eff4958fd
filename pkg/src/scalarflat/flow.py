"""Numerical integration of the phase system and the implicit-time quadratures.

:func:`integrate` drives the jitted Dormand-Prince kernel in
:mod:`scalarflat._stepper` (log coordinates, exact level conservation) and
returns an immutable :class:`Trajectory` with quintic-Hermite dense output.
:func:`time_to_reach` evaluates the implicit time integrals along a level
curve by adaptive quadrature, which serves as an independent cross-check of
the integrator; :func:`blowup_time` reports the finite escape time of orbits
whose level arc runs off to infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np
from scipy.integrate import quad

from . import _stepper
from .phase import check_dimension, level_value

__all__ = [
    "Termination",
    "TerminationKind",
    "Trajectory",
    "blowup_time",
    "integrate",
    "time_to_reach",
]


class TerminationKind(str, Enum):
    MAX_TIME = "MaxTimeReached"
    CONVERGED_TO_ORIGIN = "ConvergedToOrigin"
    LINE_ASYMPTOTE = "AdmissibleLineAsymptote"
    FINITE_TIME_BLOWUP = "FiniteTimeBlowup"
    STEP_UNDERFLOW = "StepSizeUnderflow"


_KIND_BY_CODE = {
    _stepper.MAX_TIME: TerminationKind.MAX_TIME,
    _stepper.ORIGIN: TerminationKind.CONVERGED_TO_ORIGIN,
    _stepper.LINE: TerminationKind.LINE_ASYMPTOTE,
    _stepper.BLOWUP: TerminationKind.FINITE_TIME_BLOWUP,
    _stepper.UNDERFLOW: TerminationKind.STEP_UNDERFLOW,
}


@dataclass(frozen=True)
class Termination:
    """Why one end of the integration stopped.

    ``time`` is the t value reached.  For ``FiniteTimeBlowup`` it is the
    (signed) escape time; for ``AdmissibleLineAsymptote`` the limit point on
    the admissible line is ``(limit_abscissa, -1 - limit_abscissa)``.
    """

    kind: TerminationKind
    time: float
    limit_abscissa: float | None = None

    def describe(self) -> str:
        if self.kind is TerminationKind.FINITE_TIME_BLOWUP:
            return f"{self.kind.value} T={self.time:.17g}"
        if self.kind is TerminationKind.LINE_ASYMPTOTE and self.limit_abscissa is not None:
            return f"{self.kind.value} w={self.limit_abscissa:.17g}"
        return f"{self.kind.value} t={self.time:.17g}"


# quintic two-point Hermite basis on s in [0, 1]
def _hermite_basis(s: np.ndarray) -> tuple[np.ndarray, ...]:
    s2 = s * s
    s3 = s2 * s
    s4 = s3 * s
    s5 = s4 * s
    phi0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5
    phi1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5
    phi2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5
    psi0 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5
    psi1 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5
    psi2 = 0.5 * s3 - s4 + 0.5 * s5
    return phi0, phi1, phi2, psi0, psi1, psi2


@dataclass(frozen=True)
class Trajectory:
    """Sampled integral curve (t, x, y, v) with termination metadata.

    Samples are the accepted integrator steps, strictly increasing in t, with
    the seed at t = 0 and v(0) = 0.  ``state`` evaluates dense output by
    quintic Hermite interpolation of (log|x|, log|y|, v) using the analytic
    first and second node derivatives, so interpolated points inherit the
    integrator's relative accuracy.
    """

    n: int
    x0: float
    y0: float
    tol: float
    forward_end: Termination
    backward_end: Termination
    _sx: float = field(repr=False)
    _sy: float = field(repr=False)
    _t: np.ndarray = field(repr=False)
    _Y: np.ndarray = field(repr=False)
    _D1: np.ndarray = field(repr=False)
    _D2: np.ndarray = field(repr=False)

    @property
    def t_span(self) -> tuple[float, float]:
        return (float(self._t[0]), float(self._t[-1]))

    @property
    def t_nodes(self) -> np.ndarray:
        return self._t.copy()

    def _to_xyv(self, logs: np.ndarray) -> np.ndarray:
        out = np.empty_like(logs)
        out[..., 0] = self._sx * np.exp(logs[..., 0]) if self._sx != 0.0 else 0.0
        out[..., 1] = self._sy * np.exp(logs[..., 1]) if self._sy != 0.0 else 0.0
        out[..., 2] = logs[..., 2]
        return out

    @property
    def samples(self) -> np.ndarray:
        """Array of shape (m, 4): columns t, x, y, v at the accepted steps."""
        xyv = self._to_xyv(self._Y)
        return np.column_stack([self._t, xyv])

    def state(self, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Dense-output (x, y, v) at t (scalar or array); t must lie in the span."""
        tq = np.asarray(t, dtype=float)
        a, b = self.t_span
        slack = 1e-9 * (1.0 + abs(a) + abs(b))
        if np.any(tq < a - slack) or np.any(tq > b + slack):
            raise ValueError(f"t={t} outside the integrated span [{a}, {b}]")
        tc = np.clip(tq, a, b)
        idx = np.clip(np.searchsorted(self._t, tc, side="right") - 1, 0, len(self._t) - 2)
        h = self._t[idx + 1] - self._t[idx]
        s = (tc - self._t[idx]) / h
        phi0, phi1, phi2, psi0, psi1, psi2 = _hermite_basis(s)
        hh = h[..., None]
        logs = (
            self._Y[idx] * phi0[..., None]
            + hh * self._D1[idx] * phi1[..., None]
            + hh * hh * self._D2[idx] * phi2[..., None]
            + self._Y[idx + 1] * psi0[..., None]
            + hh * self._D1[idx + 1] * psi1[..., None]
            + hh * hh * self._D2[idx + 1] * psi2[..., None]
        )
        xyv = self._to_xyv(logs)
        return xyv[..., 0], xyv[..., 1], xyv[..., 2]

    def phase(self, t) -> tuple[np.ndarray, np.ndarray]:
        x, y, _ = self.state(t)
        return x, y


def _validate_seed(n: int, p0) -> tuple[float, float]:
    x0, y0 = float(p0[0]), float(p0[1])
    if not (math.isfinite(x0) and math.isfinite(y0)):
        raise ValueError(f"seed must be finite, got ({x0}, {y0})")
    if not (1.0 + x0 + y0 > 0.0):
        raise ValueError(f"inadmissible seed ({x0}, {y0}): 1 + x + y <= 0")
    return x0, y0


def integrate(n: int, p0, t_max: float = 30.0, t_min: float = -30.0, tol: float = 1e-10) -> Trajectory:
    """Integrate the phase system with v' = 1 + x + y, v(0) = 0, both ways from t = 0.

    Stops early at the appropriate termination event: convergence to the
    origin, asymptotic approach to the admissible line, finite-time escape
    past the blow-up radius, or the requested time bounds.

    Args:
        n: complex dimension (>= 2).
        p0: admissible seed (x0, y0).
        t_max, t_min: forward/backward time bounds, t_min < 0 < t_max.
        tol: local error target per step (relative, on the log state).
    """
    n = check_dimension(n)
    x0, y0 = _validate_seed(n, p0)
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not (t_min < 0.0 < t_max):
        raise ValueError(f"need t_min < 0 < t_max, got ({t_min}, {t_max})")

    sx = math.copysign(1.0, x0) if x0 != 0.0 else 0.0
    sy = math.copysign(1.0, y0) if y0 != 0.0 else 0.0
    p0l = math.log(abs(x0)) if sx != 0.0 else 0.0
    q0l = math.log(abs(y0)) if sy != 0.0 else 0.0
    skip_origin = sx == 0.0 and sy == 0.0
    hmax = max(abs(t_max), abs(t_min))

    fwd, code_f, t_f, wlim_f = _stepper._advance(
        n, sx, sy, p0l, q0l, 0.0, float(t_max), tol, tol, hmax, skip_origin
    )
    bwd, code_b, t_b, wlim_b = _stepper._advance(
        n, sx, sy, p0l, q0l, 0.0, float(t_min), tol, tol, hmax, skip_origin
    )

    nodes = np.concatenate([bwd[::-1][:-1], fwd], axis=0)
    forward_end = Termination(
        kind=_KIND_BY_CODE[code_f],
        time=t_f,
        limit_abscissa=wlim_f if code_f == _stepper.LINE else None,
    )
    backward_end = Termination(
        kind=_KIND_BY_CODE[code_b],
        time=t_b,
        limit_abscissa=wlim_b if code_b == _stepper.LINE else None,
    )
    return Trajectory(
        n=n,
        x0=x0,
        y0=y0,
        tol=tol,
        forward_end=forward_end,
        backward_end=backward_end,
        _sx=sx,
        _sy=sy,
        _t=np.ascontiguousarray(nodes[:, 0]),
        _Y=np.ascontiguousarray(nodes[:, 1:4]),
        _D1=np.ascontiguousarray(nodes[:, 4:7]),
        _D2=np.ascontiguousarray(nodes[:, 7:10]),
    )


def _level_partner(n: int, lam: float, partner_sign: float, axis: str):
    """Partner coordinate along the level curve, as a function of the chosen one."""
    if axis == "x":
        expo = (n - 1.0) / n
        c = lam ** (1.0 / n)
    else:
        expo = n / (n - 1.0)
        c = lam ** (-1.0 / (n - 1.0))

    def partner(s: float) -> float:
        return partner_sign * c * abs(s) ** expo

    return partner, c, expo


def _scan_for_singularity(w, s0: float, s1: float, crit: float | None) -> None:
    """Raise if w vanishes somewhere on the integration interval."""
    lo, hi = min(abs(s0), abs(s1)), max(abs(s0), abs(s1))
    if not math.isfinite(hi):
        hi = max(1e12, 1e3 * lo)
    sign = math.copysign(1.0, s0)
    probes = [sign * m for m in np.geomspace(lo, hi, 257)]
    if crit is not None and lo < abs(crit) < hi:
        probes.append(sign * abs(crit))
    for s in probes:
        if w(s) <= 1e-12:
            raise ValueError(
                f"integrand singularity: the level curve meets the admissible line near {s:.6g}"
            )


def time_to_reach(
    n: int, p0, target: float, axis: Literal["x", "y"] = "x"
) -> float:
    """Time for the chosen coordinate to evolve from its seed value to ``target``.

    Evaluates the implicit time integral along the conserved level curve by
    adaptive quadrature (an oracle independent of the Runge-Kutta path).
    ``target`` may be +/-inf for orbits escaping to infinity, in which case
    the improper integral converges exactly when the escape happens in finite
    time.
    """
    n = check_dimension(n)
    x0, y0 = _validate_seed(n, p0)
    if x0 == 0.0 or y0 == 0.0:
        raise ValueError("time_to_reach needs an off-axis seed (x0 * y0 != 0)")
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    lam = level_value(n, x0, y0)

    if axis == "x":
        s0, partner_sign, rate = x0, math.copysign(1.0, y0), float(n)
    else:
        s0, partner_sign, rate = y0, math.copysign(1.0, x0), float(n - 1)
    target = float(target)
    if target == s0:
        return 0.0
    if target == 0.0:
        raise ValueError("the origin is reached only in infinite time")
    if math.copysign(1.0, target) != math.copysign(1.0, s0):
        raise ValueError(f"target {target} is not on the seed's branch (sign change)")

    partner, c, expo = _level_partner(n, lam, partner_sign, axis)

    def w(s: float) -> float:
        return 1.0 + s + partner(s)

    # interior extremum of w (only branch that can dip to zero between probes)
    crit = None
    if s0 > 0.0 and partner_sign < 0.0 and expo < 1.0:
        crit = (c * expo) ** (1.0 / (1.0 - expo))
    _scan_for_singularity(w, s0, target, crit)

    def integrand(s: float) -> float:
        return 1.0 / (-rate * s * w(s))

    value, est_err = quad(integrand, s0, target, epsabs=1e-14, epsrel=1e-11, limit=400)
    if not math.isfinite(value):
        raise ValueError("implicit time integral did not converge")
    return value


def blowup_time(n: int, p0, t_max: float = 50.0, t_min: float = -200.0, tol: float = 1e-12) -> float | None:
    """Finite escape time of the orbit through ``p0``, or None.

    Returns the signed time at which the orbit runs past the blow-up radius
    when its level arc terminates at infinity instead of in an AE end
    (finite-time-blowup behaviour).  Orbits that converge to the origin
    forward report None even though their backward piece may also live on a
    finite interval: that end is the exterior-domain edge reported by
    :class:`Trajectory` termination metadata, not an escape of this kind.
    """
    n = check_dimension(n)
    traj = integrate(n, p0, t_max=t_max, t_min=t_min, tol=tol)
    if traj.forward_end.kind is TerminationKind.CONVERGED_TO_ORIGIN:
        return None
    for end in (traj.backward_end, traj.forward_end):
        if end.kind is TerminationKind.FINITE_TIME_BLOWUP:
            return end.time
    return None
