"""Algebra of the planar phase reduction for scalar-flat U(n)-invariant metrics.

A radial Kahler potential u(t), t = log(|z|^2/2), is scalar-flat exactly when
the pair

    x = (1-n) v_t - v_tt/v_t + n - 1,      y = n v_t + v_tt/v_t - n,

with v = log u_t, solves the first-order system

    x' = -n x (1 + x + y),                 y' = (1-n) y (1 + x + y),

on the half plane 1 + x + y > 0.  This module is the pure algebra of that
plane: the vector field, the conserved level function F(x,y) = |x|^{1-n}|y|^n,
the distinguished lines and points, and the classification of initial data
into the qualitative metric families.

Everything here is exact formula evaluation; numerical integration lives in
:mod:`scalarflat.flow`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CRITICAL_LEVEL_RTOL",
    "Region",
    "RegionLabel",
    "check_dimension",
    "classify",
    "lambda_critical",
    "level_gradient",
    "level_value",
    "minimal_line_residual",
    "tangency_point",
    "vector_field",
]

# relative tolerance on F/lambda_critical - 1 used to decide membership in the
# critical level set (floating-point level membership needs an explicit bound)
CRITICAL_LEVEL_RTOL = 1e-9


class Region(str, Enum):
    """Qualitative class of the metric generated by a phase-plane seed."""

    INADMISSIBLE = "Inadmissible"
    EUCLIDEAN_FIXED_POINT = "EuclideanFixedPoint"
    AXIS_X = "AxisX"
    AXIS_Y = "AxisY"
    AE_EXTERIOR = "Region2_AE_Exterior"
    CRITICAL_LEVEL = "Region3_CriticalLevel"
    FINITE_TIME_BLOWUP = "Region4_FiniteTimeBlowup"
    COMPLETE_PUNCTURED = "Region5_CompletePunctured"


@dataclass(frozen=True)
class RegionLabel:
    """Region tag plus the per-point geometric metadata."""

    tag: Region
    domain: str
    divisor_possible: bool
    complete_without_boundary: bool


def check_dimension(n: int) -> int:
    """Validate the complex dimension (integer, n >= 2)."""
    m = int(n)
    if m != n:
        raise ValueError(f"complex dimension must be an integer, got {n!r}")
    if m < 2:
        raise ValueError(f"complex dimension must be >= 2, got {m}")
    return m


def _check_point(x: float, y: float) -> tuple[float, float]:
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"phase point must be finite, got ({x}, {y})")
    return x, y


def vector_field(n: int, x: float, y: float) -> tuple[float, float]:
    """Right-hand side (x', y') of the phase system at (x, y)."""
    n = check_dimension(n)
    w = 1.0 + x + y
    return (-n * x * w, (1.0 - n) * y * w)


def level_value(n: int, x: float, y: float) -> float:
    """Conserved level F(x, y) = |x|^{1-n} |y|^n.

    Conventions: F = +inf on the x = 0 axis, F = 0 on the y = 0 axis.  F is
    undefined at the origin (the two axis limits disagree there), which raises
    a ValueError.
    """
    n = check_dimension(n)
    x, y = _check_point(x, y)
    if x == 0.0 and y == 0.0:
        raise ValueError("level value is undefined at the origin (0, 0)")
    if y == 0.0:
        return 0.0
    if x == 0.0:
        return math.inf
    return abs(x) ** (1 - n) * abs(y) ** n


def level_gradient(n: int, x: float, y: float) -> tuple[float, float]:
    """Gradient of F at a point with x*y != 0 (used by conservation checks)."""
    n = check_dimension(n)
    x, y = _check_point(x, y)
    if x == 0.0 or y == 0.0:
        raise ValueError("level gradient needs x*y != 0")
    fx = (1 - n) * abs(x) ** (-n) * math.copysign(1.0, x) * abs(y) ** n
    fy = n * abs(y) ** (n - 1) * math.copysign(1.0, y) * abs(x) ** (1 - n)
    return (fx, fy)


def lambda_critical(n: int) -> float:
    """Critical level n^n / (n-1)^(n-1), where {F = lambda} touches the admissible line."""
    n = check_dimension(n)
    return float(n**n) / float((n - 1) ** (n - 1))


def tangency_point(n: int) -> tuple[float, float]:
    """Point (n-1, -n) where the critical level meets the admissible line.

    It is the unique point lying on both the admissible line 1 + x + y = 0 and
    the minimal line (n-1)x + ny + 2n - 1 = 0.
    """
    n = check_dimension(n)
    return (float(n - 1), -float(n))


def minimal_line_residual(n: int, x: float, y: float) -> float:
    """(n-1)x + ny + 2n - 1; zero exactly when the sphere through (x,y) is minimal."""
    n = check_dimension(n)
    x, y = _check_point(x, y)
    return (n - 1) * x + n * y + (2 * n - 1)


def _axis_label(tag: Region, coord: float, k: int) -> RegionLabel:
    # closed-form axis family with B = -coord/(1+coord); B > 0 exactly when
    # the admissible axis coordinate is negative
    b_positive = coord < 0.0
    if b_positive:
        return RegionLabel(
            tag=tag,
            domain="C^n \\ {0} (extends to a cyclic quotient of the blown-up C^n)",
            divisor_possible=True,
            complete_without_boundary=True,
        )
    return RegionLabel(
        tag=tag,
        domain=f"exterior domain |z|^2 > 2(-B)^(1/{k}), incomplete at the inner edge",
        divisor_possible=False,
        complete_without_boundary=False,
    )


def classify(n: int, x: float, y: float) -> RegionLabel:
    """Assign the unique region tag of an initial phase point.

    The admissible half plane splits into the fixed point at the origin, the
    two invariant axes, and four off-axis families separated by the level
    values 2n - 1 (smallest level whose arcs meet the minimal line) and the
    critical level lambda_critical(n):

    * ``Region2_AE_Exterior``  -- orbits converging to the origin whose level
      set stays clear of the minimal line: AE metrics on exterior domains
      {|z|^2 > 2 e^{-T}} with no minimal spheres.
    * ``Region3_CriticalLevel`` -- seeds on the critical level (relative
      tolerance 1e-9), containing the complete two-ended arc and the exterior
      arc with a single unstable minimal sphere.
    * ``Region4_FiniteTimeBlowup`` -- orbits escaping to infinity in finite
      time at one end (metrics with boundary); these are exactly the families
      whose arcs cross the minimal line.
    * ``Region5_CompletePunctured`` -- complete metrics on C^n \\ {0},
      asymptotically (twice) Euclidean.
    """
    n = check_dimension(n)
    x, y = _check_point(x, y)

    if not (1.0 + x + y > 0.0):
        return RegionLabel(
            tag=Region.INADMISSIBLE,
            domain="not a metric (1 + x + y <= 0)",
            divisor_possible=False,
            complete_without_boundary=False,
        )
    if x == 0.0 and y == 0.0:
        return RegionLabel(
            tag=Region.EUCLIDEAN_FIXED_POINT,
            domain="all of C^n (Euclidean metric)",
            divisor_possible=False,
            complete_without_boundary=True,
        )
    if x == 0.0:
        return _axis_label(Region.AXIS_Y, y, n - 1)
    if y == 0.0:
        return _axis_label(Region.AXIS_X, x, n)

    lam = level_value(n, x, y)
    lam_c = lambda_critical(n)

    if x > 0.0 and math.isfinite(lam) and abs(lam / lam_c - 1.0) <= CRITICAL_LEVEL_RTOL:
        complete = y < 0.0 and x < n - 1
        return RegionLabel(
            tag=Region.CRITICAL_LEVEL,
            domain=(
                "critical level set: complete two-ended metric on C^n \\ {0}"
                if complete
                else "critical level set: exterior metric with one unstable minimal sphere"
            ),
            divisor_possible=False,
            complete_without_boundary=complete,
        )
    if x < 0.0 or (y < 0.0 and lam > lam_c and x < n - 1):
        return RegionLabel(
            tag=Region.COMPLETE_PUNCTURED,
            domain="C^n \\ {0}, complete, asymptotically (twice) Euclidean",
            divisor_possible=False,
            complete_without_boundary=True,
        )
    if y > 0.0 or lam < 2 * n - 1:
        return RegionLabel(
            tag=Region.AE_EXTERIOR,
            domain="exterior domain {|z|^2 > 2 e^{-T}}, asymptotically Euclidean",
            divisor_possible=False,
            complete_without_boundary=False,
        )
    return RegionLabel(
        tag=Region.FINITE_TIME_BLOWUP,
        domain="exterior metric with boundary (finite-time escape at one end)",
        divisor_possible=False,
        complete_without_boundary=False,
    )
