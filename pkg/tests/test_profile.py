import math

import numpy as np
import pytest

from scalarflat import (
    ClosedFormFamily,
    TerminationKind,
    adm_mass,
    ale_coefficient,
    closed_form_profile,
    fyz_limit_check,
    integrate,
    profile_from_trajectory,
    radius_of_t,
    ricci_defect,
    scalar_curvature,
    t_of_radius,
    tangency_point,
)


@pytest.fixture(scope="module")
def reference_profile():
    return profile_from_trajectory(integrate(2, (2.0, -2.5), t_max=40.0))


def test_chain_against_finite_differences(reference_profile):
    # v_tt and v_ttt accessors must agree with finite differences of v
    prof = reference_profile
    h = 1e-3
    for t in (-0.3, 0.0, 0.8, 2.5):
        stencil = np.array([t - 2 * h, t - h, t, t + h, t + 2 * h])
        v = prof.state(stencil)[2]
        vtt_fd = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h**2)
        vttt_fd = (-v[0] + 2 * v[1] - 2 * v[3] + v[4]) / (2 * h**3)
        ch = prof.chain(t)
        assert float(ch.v_tt) == pytest.approx(vtt_fd, rel=1e-6)
        assert float(ch.v_ttt) == pytest.approx(vttt_fd, rel=1e-5)


def test_euclidean_profile_exponential():
    prof = profile_from_trajectory(integrate(2, (0.0, 0.0)))
    ts = np.linspace(-5.0, 5.0, 11)
    assert np.max(np.abs(prof.u_t(ts) - np.exp(ts))) <= 1e-10
    assert np.max(np.abs(prof.u_tt(ts) - np.exp(ts))) <= 1e-10


def test_reference_normalization(reference_profile):
    assert float(reference_profile.u_t(0.0)) == 1.0
    assert float(reference_profile.u_tt(0.0)) == 0.5


def test_trajectory_matches_closed_form_up_to_normalization():
    # seed (0, -1/2) is the B = 1 family; u_t ratio is (B+1)^{-1} = 1/2
    traj = integrate(2, (0.0, -0.5))
    prof = profile_from_trajectory(traj)
    ts = np.linspace(-10.0, 15.0, 300)
    closed = (1.0 + np.exp(ts))  # B + e^t with B = 1
    ratio = prof.u_t(ts) / closed
    assert np.max(np.abs(ratio - 0.5)) <= 0.5 * 1e-8


def test_closed_form_burns_simanca_values():
    prof = closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0))
    ts = np.linspace(-4.0, 4.0, 9)
    assert np.max(np.abs(prof.u_t(ts) - (1.0 + np.exp(ts)))) <= 1e-12 * np.max(prof.u_t(ts))
    assert np.max(np.abs(prof.u_tt(ts) - np.exp(ts))) <= 1e-12 * np.max(prof.u_tt(ts))
    x, y, _ = prof.state(0.0)
    assert float(x) == 0.0
    assert float(y) == pytest.approx(-0.5, rel=1e-14)


def test_closed_form_eguchi_hanson_derivative():
    # B = 1/4 reproduces half the classical Ricci-flat potential, whose
    # derivative is 2 sqrt(e^{2t} + b^2) with b = 1/2
    prof = closed_form_profile(ClosedFormFamily(n=2, k=2, A=1.0, B=0.25))
    ts = np.linspace(-3.0, 3.0, 13)
    target = 0.5 * 2.0 * np.sqrt(np.exp(2 * ts) + 0.25)
    assert np.max(np.abs(prof.u_t(ts) / target - 1.0)) <= 1e-14


def test_closed_form_flat_case():
    prof = closed_form_profile(ClosedFormFamily(n=4, k=4, A=2.5, B=0.0))
    ts = np.linspace(-2.0, 2.0, 7)
    assert np.max(np.abs(prof.u_t(ts) - 2.5 * np.exp(ts))) <= 1e-13 * 2.5 * math.e**2
    x, y, _ = prof.state(1.0)
    assert float(x) == 0.0 and float(y) == 0.0


def test_closed_form_phase_curves():
    prof = closed_form_profile(ClosedFormFamily(n=3, k=2, A=1.0, B=0.7))
    x, y, _ = prof.state(0.4)
    be = 0.7 * math.exp(-0.8)
    assert float(y) == pytest.approx(-be / (1 + be), rel=1e-14)
    assert float(x) == 0.0
    prof = closed_form_profile(ClosedFormFamily(n=3, k=3, A=1.0, B=0.7))
    x, y, _ = prof.state(0.4)
    be = 0.7 * math.exp(-1.2)
    assert float(x) == pytest.approx(-be / (1 + be), rel=1e-14)
    assert float(y) == 0.0


def test_closed_form_domain_validation():
    fam = ClosedFormFamily(n=2, k=2, A=1.0, B=-0.5)
    prof = closed_form_profile(fam)
    with pytest.raises(ValueError):
        prof.state(fam.t_lower - 0.1)
    with pytest.raises(ValueError):
        ClosedFormFamily(n=2, k=3, A=1.0, B=0.0)
    with pytest.raises(ValueError):
        ClosedFormFamily(n=2, k=1, A=-1.0, B=0.0)
    with pytest.raises(ValueError):
        ClosedFormFamily(n=2, k=1, A=1.0, B=-1.5)


def test_scalar_curvature_zero_cases(reference_profile):
    euclid = profile_from_trajectory(integrate(2, (0.0, 0.0)))
    assert float(np.asarray(scalar_curvature(euclid, 1.3))) == 0.0
    for t in (-0.4, 0.0, 1.0):
        assert abs(float(np.asarray(scalar_curvature(reference_profile, t)))) <= 1e-6
    closed = closed_form_profile(ClosedFormFamily(n=3, k=2, A=1.0, B=0.7))
    assert abs(float(np.asarray(scalar_curvature(closed, 0.3)))) <= 1e-10


def test_ricci_defect_identity(reference_profile):
    s = reference_profile.trajectory.samples
    defect = np.asarray(ricci_defect(reference_profile, s[:, 0]))
    scale = np.maximum(1.0, np.abs(s[:, 1]) + np.abs(s[:, 2]))
    assert np.max(np.abs(defect - s[:, 2]) / scale) <= 1e-12


def test_ricci_defect_closed_forms():
    flat = closed_form_profile(ClosedFormFamily(n=3, k=3, A=1.0, B=2.0))
    ts = np.linspace(-3.0, 3.0, 9)
    assert np.max(np.abs(np.asarray(ricci_defect(flat, ts)))) <= 1e-12
    bs = closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0))
    assert float(np.asarray(ricci_defect(bs, 0.0))) == pytest.approx(-0.5, abs=1e-14)


def test_adm_mass_euclidean_exact():
    m_num, m_paper = adm_mass(profile_from_trajectory(integrate(2, (0.0, 0.0))))
    assert m_num == 0.0 and m_paper == 0.0


def test_adm_mass_burns_simanca():
    m_num, m_paper = adm_mass(closed_form_profile(ClosedFormFamily(n=2, k=1, A=1.0, B=1.0)))
    assert m_num == pytest.approx(1.0, rel=1e-10)
    assert m_paper is None


def test_adm_mass_trajectory(reference_profile):
    m_num, m_paper = adm_mass(reference_profile)
    assert m_paper == pytest.approx(2.5, abs=1e-14)
    assert m_num == pytest.approx(2.5, rel=1e-8)


def test_adm_mass_ricci_flat_family_vanishes():
    m_num, _ = adm_mass(closed_form_profile(ClosedFormFamily(n=3, k=3, A=1.0, B=0.5)))
    assert abs(m_num) <= 1e-12


def test_adm_mass_requires_ae_end():
    prof = profile_from_trajectory(integrate(2, (3.0, -3.5), t_max=60.0))
    with pytest.raises(ValueError):
        adm_mass(prof)


def test_ale_coefficient(reference_profile):
    c = ale_coefficient(reference_profile)
    assert math.isfinite(c) and c > 0.0
    assert ale_coefficient(closed_form_profile(ClosedFormFamily(n=2, k=1, A=3.0, B=1.0))) == 3.0


def test_renormalized_profile(reference_profile):
    shifted = reference_profile.renormalized(1.0)
    assert float(shifted.u_t(0.0)) == pytest.approx(1.0, abs=1e-14)
    x1, y1, _ = reference_profile.state(1.0)
    xs, ys, vs = shifted.state(0.0)
    assert float(xs) == pytest.approx(float(x1), rel=1e-14)
    assert float(vs) == pytest.approx(0.0, abs=1e-14)


def test_fyz_limit_reaches_tangency():
    lim = fyz_limit_check(2)
    tx, ty = tangency_point(2)
    assert math.hypot(lim.x - tx, lim.y - ty) <= 1e-4
    assert lim.forward_end.kind is TerminationKind.CONVERGED_TO_ORIGIN


def test_fyz_limit_seed_validation():
    with pytest.raises(ValueError):
        fyz_limit_check(2, seed=(0.5, -0.5))  # not on the critical level


def test_coordinate_map_roundtrip():
    r = np.array([0.3, 1.0, 4.7])
    assert np.max(np.abs(radius_of_t(t_of_radius(r)) - r)) <= 1e-14
    assert float(t_of_radius(math.sqrt(2.0))) == pytest.approx(0.0, abs=1e-15)
