"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints one PASS/FAIL line with the measured extremes; the same
checks back the ``verify`` CLI subcommand.  Full-scale sample counts are used
throughout (the fast variants exist only for the CLI quick path).
"""

import pytest

from scalarflat.checks import (
    check_axis_closed_forms,
    check_dichotomy,
    check_euclidean_exactness,
    check_first_variation,
    check_fyz_limit,
    check_level_conservation,
    check_mass_reproduction,
    check_minimal_spheres,
    check_penrose_gap,
    check_ricci_identity,
    check_scalar_flatness,
    check_stability_identity,
)

CRITERIA = [
    (1, "Euclidean exactness (area, volume, mean curvature)", check_euclidean_exactness),
    (2, "level conservation along integrated spans", check_level_conservation),
    (3, "axis trajectories match the closed-form families", check_axis_closed_forms),
    (4, "scalar-flatness along orbits and closed forms", check_scalar_flatness),
    (5, "Ricci-defect identity", check_ricci_identity),
    (6, "minimal-sphere and stability reproduction", check_minimal_spheres),
    (7, "stability factorization identity", check_stability_identity),
    (8, "ADM mass reproduction", check_mass_reproduction),
    (9, "Penrose gap identity (full verdict informational)", check_penrose_gap),
    (10, "divisor / stable-sphere dichotomy sweep", check_dichotomy),
    (11, "critical-arc backward limit", check_fyz_limit),
    (12, "first variation of sphere area", check_first_variation),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{k:02d}" for k, _, _ in CRITERIA])
def test_acceptance_criterion(number, title, check):
    result = check(False)
    status = "PASS" if result.passed else "FAIL"
    print(f"[acceptance] criterion {number:2d} {status}: {title} -- {result.detail}")
    assert result.passed, f"criterion {number} ({title}): {result.detail}"
