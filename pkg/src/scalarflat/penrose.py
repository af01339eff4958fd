"""Mass and Penrose-type audit: minimal-sphere volume, reduced and full
inequalities, and the divisor / stable-minimal-sphere dichotomy.

Normalization convention: reports are stated with t = 0 at the stable minimal
sphere, so u_t(0) = 1, u_tt(0) = 1 + x0 + y0, and the leading-order mass is
-y0/(n-1).  On the minimal line the reduced inequality

    -y0/(n-1)  >=  1 + x0 + y0

holds with gap identically n/(n-1).  The full inequality is evaluated against
the unit-hypersphere volume V_E = 2 pi^n / (n-1)! and reported as
informational only (the constant bookkeeping of the reduction is not pinned
down by the source analysis).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .flow import TerminationKind, integrate
from .phase import check_dimension, classify, minimal_line_residual
from .profile import adm_mass, profile_from_trajectory
from .spheres import Stability, find_minimal_spheres

__all__ = [
    "MINIMAL_LINE_TOL",
    "PenroseReport",
    "dichotomy_report",
    "euclidean_sphere_volume",
    "minimal_sphere_volume",
    "penrose_full",
    "penrose_reduced",
]

MINIMAL_LINE_TOL = 1e-9


@dataclass(frozen=True)
class PenroseReport:
    """Inequality audit for one seed; sphere-dependent fields are None when
    the orbit carries no stable minimal sphere."""

    n: int
    x0: float | None
    V_sigma: float | None
    m_paper: float | None
    reduced_lhs: float | None
    reduced_rhs: float | None
    gap: float | None
    full_rhs: float | None
    holds_reduced: bool | None
    holds_full: bool | None
    divisor_present: bool
    dichotomy_ok: bool

    def to_dict(self) -> dict:
        return asdict(self)


def euclidean_sphere_volume(n: int) -> float:
    """Volume 2 pi^n / (n-1)! of the unit hypersphere S^{2n-1}."""
    n = check_dimension(n)
    return 2.0 * math.pi**n / math.factorial(n - 1)


def minimal_sphere_volume(n: int, x0: float) -> float:
    """Volume of the minimal sphere with phase abscissa x0, normalized u_t(0) = 1:
    (2 pi)^n / (n-1)! * sqrt(2 (1 - n + x0) / n).
    """
    n = check_dimension(n)
    x0 = float(x0)
    if not (n - 1 < x0 <= 2 * n - 1 + MINIMAL_LINE_TOL):
        raise ValueError(
            f"x0={x0} outside the stable window ({n - 1}, {2 * n - 1}] for n={n}"
        )
    return (2.0 * math.pi) ** n / math.factorial(n - 1) * math.sqrt(2.0 * (1 - n + x0) / n)


def penrose_reduced(n: int, x0: float, y0: float) -> tuple[float, float, float]:
    """Reduced inequality sides at a minimal-line point: (lhs, rhs, gap).

    lhs = -y0/(n-1) (leading-order mass), rhs = 1 + x0 + y0 (= u_tt at the
    sphere); their difference equals n/(n-1) identically on the minimal line,
    so the reduced inequality holds in every dimension.
    """
    n = check_dimension(n)
    x0, y0 = float(x0), float(y0)
    residual = minimal_line_residual(n, x0, y0)
    if abs(residual) > MINIMAL_LINE_TOL:
        raise ValueError(
            f"({x0}, {y0}) is not on the minimal line (residual {residual:.3e})"
        )
    if not (1.0 + x0 + y0 > 0.0):
        raise ValueError(f"({x0}, {y0}) is inadmissible")
    lhs = -y0 / (n - 1)
    rhs = 1.0 + x0 + y0
    return lhs, rhs, lhs - rhs


def penrose_full(n: int, m: float, volume: float) -> tuple[float, bool]:
    """Full-inequality right side 0.5 (V / V_E)^{(2n-2)/(2n-1)} and verdict m >= rhs."""
    n = check_dimension(n)
    if not volume > 0.0:
        raise ValueError(f"sphere volume must be positive, got {volume}")
    ratio = volume / euclidean_sphere_volume(n)
    rhs = 0.5 * ratio ** ((2.0 * n - 2.0) / (2.0 * n - 1.0))
    return rhs, bool(m >= rhs)


def dichotomy_report(
    n: int,
    seed,
    t_max: float = 35.0,
    t_min: float = -15.0,
    tol: float = 1e-10,
) -> PenroseReport:
    """Full audit of one admissible seed.

    Classifies the seed, integrates its orbit, locates minimal spheres, and
    when a stable one exists re-normalizes at it, extracts the mass, and
    evaluates both inequalities.  ``divisor_present`` is the classification
    flag (axis family with B > 0); ``dichotomy_ok`` records that a stable
    sphere and a divisor never coexist.
    """
    n = check_dimension(n)
    label = classify(n, seed[0], seed[1])
    divisor_present = label.divisor_possible

    traj = integrate(n, seed, t_max=t_max, t_min=t_min, tol=tol)
    prof = profile_from_trajectory(traj)
    spheres = find_minimal_spheres(prof)
    stable = [s for s in spheres if s.stability is not Stability.UNSTABLE]

    x0 = V_sigma = m_paper = lhs = rhs = gap = full_rhs = None
    holds_reduced = holds_full = None
    if stable:
        sphere = stable[-1]
        at_sphere = prof.renormalized(sphere.t_star)
        if at_sphere.forward_end.kind is TerminationKind.CONVERGED_TO_ORIGIN:
            try:
                _, m_paper = adm_mass(at_sphere)
            except ArithmeticError:
                # numeric extrapolation not certified on a short span; the
                # report's field is the leading-order value either way
                m_paper = -sphere.y / (n - 1)
        else:
            m_paper = -sphere.y / (n - 1)
        x0 = sphere.x
        V_sigma = minimal_sphere_volume(n, x0)
        lhs, rhs, gap = penrose_reduced(n, sphere.x, sphere.y)
        holds_reduced = bool(lhs >= rhs)
        full_rhs, holds_full = penrose_full(n, m_paper, V_sigma)

    return PenroseReport(
        n=n,
        x0=x0,
        V_sigma=V_sigma,
        m_paper=m_paper,
        reduced_lhs=lhs,
        reduced_rhs=rhs,
        gap=gap,
        full_rhs=full_rhs,
        holds_reduced=holds_reduced,
        holds_full=holds_full,
        divisor_present=divisor_present,
        dichotomy_ok=not (divisor_present and bool(stable)),
    )
