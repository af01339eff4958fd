import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalarflat import (
    Region,
    classify,
    lambda_critical,
    level_gradient,
    level_value,
    minimal_line_residual,
    tangency_point,
    vector_field,
)

finite_coord = st.floats(min_value=-40.0, max_value=40.0, allow_nan=False)


def test_vector_field_hand_value():
    assert vector_field(2, 1.0, 1.0) == (-6.0, -3.0)


def test_vector_field_origin_fixed():
    for n in (2, 3, 7):
        assert vector_field(n, 0.0, 0.0) == (0.0, 0.0)


@pytest.mark.parametrize("x", [-2.0, -0.3, 0.7, 4.0])
def test_vector_field_vanishes_on_admissible_line(x):
    fx, fy = vector_field(3, x, -1.0 - x)
    assert fx == 0.0 and fy == 0.0


def test_vector_field_axes_invariant():
    assert vector_field(2, 0.0, 0.7)[0] == 0.0
    assert vector_field(4, 0.0, -0.5)[0] == 0.0
    assert vector_field(2, 1.3, 0.0)[1] == 0.0
    assert vector_field(5, -0.4, 0.0)[1] == 0.0


def test_vector_field_rejects_bad_dimension():
    with pytest.raises(ValueError):
        vector_field(1, 0.5, 0.5)


@settings(max_examples=300, deadline=None)
@given(x=finite_coord, y=finite_coord, n=st.integers(min_value=2, max_value=8))
def test_level_is_flow_invariant(x, y, n):
    if abs(x) < 1e-6 or abs(y) < 1e-6:
        return
    gx, gy = level_gradient(n, x, y)
    vx, vy = vector_field(n, x, y)
    dot = abs(gx * vx + gy * vy)
    assert dot <= 1e-12 * math.hypot(gx, gy) * math.hypot(vx, vy)


def test_level_value_examples():
    assert level_value(2, 1.0, -2.0) == pytest.approx(4.0, rel=1e-14)
    assert level_value(2, 4.0, 1.0) == pytest.approx(0.25, rel=1e-14)
    assert level_value(2, 0.7, 0.0) == 0.0
    assert level_value(3, 0.0, -0.5) == math.inf


def test_level_value_undefined_at_origin():
    with pytest.raises(ValueError):
        level_value(2, 0.0, 0.0)


def test_lambda_critical_values():
    assert lambda_critical(2) == pytest.approx(4.0, rel=1e-15)
    assert lambda_critical(3) == pytest.approx(6.75, rel=1e-15)
    assert lambda_critical(4) == pytest.approx(256.0 / 27.0, rel=1e-15)


@pytest.mark.parametrize("n", range(2, 9))
def test_tangency_point_lies_on_both_lines_at_critical_level(n):
    tx, ty = tangency_point(n)
    assert 1.0 + tx + ty == 0.0
    assert minimal_line_residual(n, tx, ty) == 0.0
    assert level_value(n, tx, ty) == pytest.approx(lambda_critical(n), rel=1e-12)


def test_tangency_point_values():
    assert tangency_point(2) == (1.0, -2.0)
    assert tangency_point(3) == (2.0, -3.0)


def test_minimal_line_residual_examples():
    assert minimal_line_residual(2, 2.0, -2.5) == 0.0
    assert minimal_line_residual(2, 0.0, 0.0) == 3.0
    assert minimal_line_residual(2, 9.0, -6.0) == 0.0


def test_classify_named_points():
    assert classify(2, 0.0, 0.0).tag is Region.EUCLIDEAN_FIXED_POINT
    assert classify(2, 3.0, -3.5).tag is Region.FINITE_TIME_BLOWUP
    assert classify(2, -0.5, 0.3).tag is Region.COMPLETE_PUNCTURED
    assert classify(2, 0.2, 0.2).tag is Region.AE_EXTERIOR
    # orbit carrying the reference stable sphere (level between 2n-1 and critical)
    assert classify(2, 2.0, -2.5).tag is Region.FINITE_TIME_BLOWUP
    # the low-level exterior family has no minimal spheres
    assert classify(2, 4.0, -1.0).tag is Region.AE_EXTERIOR
    # punctured branch of a supercritical level
    assert classify(2, 0.3, -1.2).tag is Region.COMPLETE_PUNCTURED


def test_classify_critical_level():
    assert classify(2, 9.0, -6.0).tag is Region.CRITICAL_LEVEL
    assert classify(2, 4.0, -4.0).tag is Region.CRITICAL_LEVEL
    label = classify(2, 0.5, -math.sqrt(4.0 * 0.5))  # black-arc point
    assert label.tag is Region.CRITICAL_LEVEL
    assert label.complete_without_boundary
    # 1e-9 relative tolerance separates the critical level from its neighbors
    assert classify(2, 4.0 * (1 + 1e-12), -4.0).tag is Region.CRITICAL_LEVEL
    assert classify(2, 4.0 * (1 + 1e-6), -4.0).tag is Region.FINITE_TIME_BLOWUP


def test_classify_axes_and_divisor_flags():
    label = classify(2, 0.0, -0.5)
    assert label.tag is Region.AXIS_Y
    assert label.divisor_possible and label.complete_without_boundary
    label = classify(2, -0.25, 0.0)
    assert label.tag is Region.AXIS_X
    assert label.divisor_possible
    label = classify(2, 0.0, 1.5)
    assert label.tag is Region.AXIS_Y
    assert not label.divisor_possible and not label.complete_without_boundary
    assert not classify(3, 0.8, 0.0).divisor_possible


def test_classify_tangency_point_is_inadmissible():
    assert classify(2, *tangency_point(2)).tag is Region.INADMISSIBLE


@settings(max_examples=500, deadline=None)
@given(x=finite_coord, y=finite_coord, n=st.integers(min_value=2, max_value=6))
def test_classify_total_and_inadmissible_iff(x, y, n):
    label = classify(n, x, y)
    assert isinstance(label.tag, Region)
    assert (label.tag is Region.INADMISSIBLE) == (1.0 + x + y <= 0.0)


def test_classify_rejects_non_finite():
    with pytest.raises(ValueError):
        classify(2, math.inf, 0.0)
