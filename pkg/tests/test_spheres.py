import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalarflat import (
    ClosedFormFamily,
    Stability,
    ball_volume,
    closed_form_profile,
    find_minimal_spheres,
    integrate,
    mean_curvature,
    mean_curvature_phase,
    profile_from_trajectory,
    sphere_area,
    stability_functional,
    stability_identity_residual,
    t_of_radius,
)


@pytest.fixture(scope="module")
def euclid():
    return closed_form_profile(ClosedFormFamily(n=2, k=2, A=1.0, B=0.0))


def test_euclid_unit_sphere_area(euclid):
    t1 = float(t_of_radius(1.0))
    assert abs(float(np.asarray(sphere_area(euclid, t1))) - 2.0 * math.pi**2) <= 1e-12


def test_euclid_unit_ball_volume(euclid):
    t1 = float(t_of_radius(1.0))
    assert abs(float(np.asarray(ball_volume(euclid, t1))) - math.pi**2 / 2.0) <= 1e-12


def test_euclid_ball_volume_general_dimension():
    prof = closed_form_profile(ClosedFormFamily(n=3, k=3, A=1.0, B=0.0))
    r = 1.7
    expected = math.pi**3 * r**6 / math.factorial(3)
    assert float(np.asarray(ball_volume(prof, float(t_of_radius(r))))) == pytest.approx(expected, rel=1e-13)


def test_euclid_mean_curvature_is_inverse_radius(euclid):
    radii = np.geomspace(0.2, 5.0, 20)
    h = np.asarray(mean_curvature(euclid, t_of_radius(radii)))
    assert np.max(np.abs(h + 1.0 / radii)) <= 1e-12


def test_area_at_reference_sphere():
    prof = profile_from_trajectory(integrate(2, (2.0, -2.5)))
    assert float(np.asarray(sphere_area(prof, 0.0))) == pytest.approx(4.0 * math.pi**2, rel=1e-12)


def test_area_scaling_in_amplitude():
    for n in (2, 3, 5):
        a1 = closed_form_profile(ClosedFormFamily(n=n, k=n, A=1.0, B=0.3))
        a2 = closed_form_profile(ClosedFormFamily(n=n, k=n, A=2.0, B=0.3))
        r = float(np.asarray(sphere_area(a2, 0.7))) / float(np.asarray(sphere_area(a1, 0.7)))
        assert r == pytest.approx(2.0 ** (n - 1) * math.sqrt(2.0), rel=1e-12)


def test_burns_simanca_ball_volume():
    prof = closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0))
    vol = float(np.asarray(ball_volume(prof, 0.0)))
    assert vol == pytest.approx(6.0 * math.pi**2, rel=1e-12)


def test_burns_simanca_mean_curvature_value():
    prof = closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0))
    assert float(np.asarray(mean_curvature(prof, 0.0))) == pytest.approx(-math.sqrt(2.0) / 3.0, rel=1e-13)


def test_mean_curvature_zero_at_minimal_point():
    prof = profile_from_trajectory(integrate(2, (2.0, -2.5)))
    assert float(np.asarray(mean_curvature(prof, 0.0))) == 0.0


def test_mean_curvature_forms_agree():
    traj = integrate(2, (0.7, -1.2))
    prof = profile_from_trajectory(traj)
    s = traj.samples
    keep = 1.0 + s[:, 1] + s[:, 2] > 1e-8
    hu = np.asarray(mean_curvature(prof, s[keep, 0]))
    hp = np.asarray(mean_curvature_phase(2, s[keep, 1], s[keep, 2], s[keep, 3]))
    assert np.max(np.abs(hu - hp) / np.maximum(1.0, np.abs(hu))) <= 1e-12


def test_minimal_spheres_reference_orbit():
    prof = profile_from_trajectory(integrate(2, (2.0, -2.5)))
    reps = find_minimal_spheres(prof)
    at_zero = [r for r in reps if abs(r.t_star) <= 1e-9]
    assert len(at_zero) == 1
    sphere = at_zero[0]
    assert sphere.stability is Stability.STABLE
    assert sphere.outermost
    assert sphere.area == pytest.approx(4.0 * math.pi**2, rel=1e-12)
    # the same level also carries an inner unstable sphere at (4.5, -3.75)
    inner = [r for r in reps if r.t_star < -1e-3]
    assert len(inner) == 1
    assert inner[0].stability is Stability.UNSTABLE
    assert not inner[0].outermost
    assert inner[0].x == pytest.approx(4.5, abs=1e-9)


def test_minimal_sphere_unique_unstable_on_critical_level():
    prof = profile_from_trajectory(integrate(2, (9.0, -6.0)))
    reps = find_minimal_spheres(prof)
    assert len(reps) == 1
    assert reps[0].stability is Stability.UNSTABLE
    assert abs(reps[0].t_star) <= 1e-9
    assert reps[0].outermost


def test_minimal_spheres_weakly_stable_boundary():
    prof = profile_from_trajectory(integrate(2, (3.0, -3.0)))
    reps = find_minimal_spheres(prof)
    assert len(reps) == 1
    assert reps[0].stability is Stability.WEAKLY_STABLE
    assert abs(reps[0].t_star) <= 1e-9


def test_minimal_spheres_absent_on_axis_families():
    for seed in [(0.0, -0.5), (0.25, 0.0), (0.0, 1.2)]:
        prof = profile_from_trajectory(integrate(2, seed))
        assert find_minimal_spheres(prof) == []


def test_minimal_spheres_closed_form_profiles_empty():
    prof = closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0))
    assert find_minimal_spheres(prof) == []


def test_stability_functional_signs():
    stable = profile_from_trajectory(integrate(2, (2.0, -2.5)))
    assert float(np.asarray(stability_functional(stable, 0.0))) == pytest.approx(0.25, rel=1e-12)
    unstable = profile_from_trajectory(integrate(2, (9.0, -6.0)))
    assert float(np.asarray(stability_functional(unstable, 0.0))) == pytest.approx(-96.0, rel=1e-10)
    marginal = profile_from_trajectory(integrate(2, (3.0, -3.0)))
    assert abs(float(np.asarray(stability_functional(marginal, 0.0)))) <= 1e-12


def test_stability_identity_named_points():
    assert abs(stability_identity_residual(2, 2.0, -2.5, 0.0)) <= 1e-12
    assert abs(stability_identity_residual(5, 1.3, -0.7, 0.7)) <= 1e-10
    for n in (2, 3, 5, 8):
        for v in (-1.0, 0.0, 0.7):
            assert stability_identity_residual(n, 0.0, 0.0, v) == 0.0


@settings(max_examples=400, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=8),
    x=st.floats(min_value=-3.0, max_value=3.0),
    y=st.floats(min_value=-3.0, max_value=3.0),
    v=st.floats(min_value=-1.0, max_value=1.0),
)
def test_stability_identity_random(n, x, y, v):
    if not 1.0 + x + y > 1e-6:
        return
    assert abs(stability_identity_residual(n, x, y, v)) <= 1e-10


def test_first_variation_of_area():
    prof = profile_from_trajectory(integrate(2, (0.5, -0.25)))
    delta = 1e-3
    for t in (-0.5, 0.4, 1.5):
        n = prof.n
        ch = prof.chain(t)
        area = float(np.asarray(sphere_area(prof, t)))
        h_val = float(np.asarray(mean_curvature(prof, t)))
        expected = -(2 * n - 1) * h_val * math.sqrt(float(ch.u_tt) / 2.0) * area
        stencil = np.asarray(sphere_area(prof, np.array([t - 2 * delta, t - delta, t + delta, t + 2 * delta])))
        fd = (stencil[0] - 8 * stencil[1] + 8 * stencil[2] - stencil[3]) / (12 * delta)
        assert fd == pytest.approx(expected, rel=1e-6)
