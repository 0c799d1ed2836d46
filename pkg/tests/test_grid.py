import numpy as np
import pytest
from hypothesis import given, strategies as st

from depthorient import (DepthMap, canonicalize_angle, circular_distance,
                         min_max_normalize, rotate90, rotate_arbitrary)

finite_angles = st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False)


def test_canonicalize_examples():
    assert canonicalize_angle(0) == 0.0
    assert canonicalize_angle(370) == 10.0
    assert canonicalize_angle(-45) == 315.0


def test_canonicalize_rejects_non_finite():
    for bad in (float("nan"), float("inf"), float("-inf")):
        with pytest.raises(ValueError):
            canonicalize_angle(bad)


@given(finite_angles)
def test_canonicalize_idempotent_and_periodic(a):
    c = canonicalize_angle(a)
    assert 0.0 <= c < 360.0
    assert canonicalize_angle(c) == c
    assert canonicalize_angle(c + 360.0) == pytest.approx(c, abs=1e-9)


def test_circular_distance_examples():
    assert circular_distance(350, 0) == 10.0
    assert circular_distance(90, 90) == 0.0
    assert circular_distance(10, 250) == 120.0


@given(finite_angles, finite_angles, finite_angles)
def test_circular_distance_metric_properties(a, b, c):
    assert circular_distance(a, b) == pytest.approx(circular_distance(b, a))
    d = circular_distance(a, b)
    assert 0.0 <= d <= 180.0
    assert (circular_distance(a, c)
            <= circular_distance(a, b) + circular_distance(b, c) + 1e-9)


def test_depth_map_validation():
    with pytest.raises(ValueError):
        DepthMap(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        DepthMap(np.ones((2, 2)), np.ones((3, 2), dtype=bool))
    with pytest.raises(ValueError):
        DepthMap(np.array([[1.0, -2.0]]))
    with pytest.raises(ValueError):
        DepthMap(np.array([[1.0, np.nan]]))
    # masked entries may hold anything; they are stored as 0
    m = DepthMap(np.array([[1.0, np.nan]]), np.array([[True, False]]))
    assert m.values[0, 1] == 0.0


def test_rotate90_two_pixel_hand_case():
    # 2x1 map [a, b] left-to-right, one CCW quarter turn: a ends up below b
    m = DepthMap(np.array([[1.0, 2.0]]))
    r = rotate90(m, 1)
    assert r.values.shape == (2, 1)
    assert r.values[0, 0] == 2.0 and r.values[1, 0] == 1.0


def test_rotate90_identity_cases():
    rng = np.random.default_rng(0)
    m = DepthMap(rng.uniform(0, 5, (4, 7)))
    for k in (0, 4, -4, 8):
        r = rotate90(m, k)
        assert np.array_equal(r.values, m.values)
        assert np.array_equal(r.valid, m.valid)


def test_rotate90_four_times_is_identity():
    rng = np.random.default_rng(1)
    for _ in range(20):
        h, w = rng.integers(1, 12, size=2)
        m = DepthMap(rng.uniform(0, 9, (h, w)), rng.random((h, w)) > 0.3)
        out = m
        for _ in range(4):
            out = rotate90(out, 1)
        assert np.array_equal(out.values, m.values)
        assert np.array_equal(out.valid, m.valid)
        back = rotate90(rotate90(m, 1), 3)
        assert np.array_equal(back.values, m.values)
        assert np.array_equal(back.valid, m.valid)


def test_rotate_arbitrary_zero_is_identity():
    rng = np.random.default_rng(2)
    m = DepthMap(rng.uniform(0, 9, (9, 5)), rng.random((9, 5)) > 0.2)
    r = rotate_arbitrary(m, 0.0)
    assert np.array_equal(r.values, m.values)
    assert np.array_equal(r.valid, m.valid)


def test_rotate_arbitrary_90_matches_rotate90_on_squares():
    rng = np.random.default_rng(3)
    m = DepthMap(rng.uniform(0, 9, (8, 8)))
    for quarter, deg in ((1, 90.0), (2, 180.0), (3, 270.0)):
        a = rotate_arbitrary(m, deg)
        b = rotate90(m, quarter)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.valid, b.valid)


def test_rotate_arbitrary_180_hand_case():
    # 3x3 vertical ramp 0/1/2 by rows flips to 2/1/0, full validity
    m = DepthMap(np.repeat(np.arange(3.0)[:, None], 3, axis=1))
    r = rotate_arbitrary(m, 180.0)
    assert np.array_equal(r.values, np.repeat(np.array([2.0, 1.0, 0.0])[:, None], 3, axis=1))
    assert r.valid.all()


def test_rotate_arbitrary_non_square_180_keeps_shape():
    rng = np.random.default_rng(4)
    m = DepthMap(rng.uniform(0, 9, (5, 11)))
    r = rotate_arbitrary(m, 180.0)
    assert r.values.shape == (5, 11)
    assert np.array_equal(r.values, m.values[::-1, ::-1])


def test_rotate_arbitrary_never_creates_validity():
    rng = np.random.default_rng(5)
    for _ in range(25):
        h, w = rng.integers(3, 20, size=2)
        m = DepthMap(rng.uniform(0, 9, (h, w)), rng.random((h, w)) > 0.2)
        angle = float(rng.uniform(0, 360))
        r = rotate_arbitrary(m, angle)
        assert r.valid_count() <= m.valid_count()
        assert r.values.shape == m.values.shape


def test_rotate_arbitrary_invalid_pixels_hold_zero():
    m = DepthMap(np.full((6, 6), 7.0))
    r = rotate_arbitrary(m, 30.0)
    assert np.all(r.values[~r.valid] == 0.0)
    # interpolation of a constant stays constant where valid
    assert np.allclose(r.values[r.valid], 7.0)


def test_min_max_normalize_examples():
    assert min_max_normalize([2, 4]) == [0.0, 1.0]
    assert min_max_normalize([5, 5, 5]) == [0.0, 0.0, 0.0]
    assert min_max_normalize([1, 2, 3]) == [0.0, 0.5, 1.0]


def test_min_max_normalize_errors():
    with pytest.raises(ValueError):
        min_max_normalize([])
    with pytest.raises(ValueError):
        min_max_normalize([1.0, float("nan")])
    with pytest.raises(ValueError):
        min_max_normalize([1.0, float("inf")])
