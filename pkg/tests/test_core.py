import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import four_vector_value, quadruple_distortion
from posdistort import (
    DimensionMismatch,
    NonPositiveEntry,
    NotTwoByTwo,
    cross_ratio,
    dist,
    distortion,
    multiply,
    oriented_distortion,
    slopes,
    validate,
)

positive = st.floats(min_value=1e-3, max_value=1e3)


def matrices(max_side=6):
    shapes = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return shapes.flatmap(lambda s: arrays(np.float64, s, elements=positive))


def test_validate_accepts_positive():
    a = validate([[1, 2], [3, 4]])
    np.testing.assert_array_equal(a, [[1.0, 2.0], [3.0, 4.0]])


@pytest.mark.parametrize(
    "raw, index",
    [
        ([[1, 0], [3, 4]], (0, 1)),
        ([[1, -2], [3, 4]], (0, 1)),
        ([[1, 2], [np.nan, 4]], (1, 0)),
        ([[1, 2], [3, np.inf]], (1, 1)),
    ],
)
def test_validate_rejects(raw, index):
    with pytest.raises(NonPositiveEntry) as exc:
        validate(raw)
    assert exc.value.index == index


def test_validate_ragged():
    with pytest.raises(DimensionMismatch):
        validate([[1, 2], [3]])


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 1), (1, 3), (1, 3)), ((2, 4, 6), (1, 2, 3), (0.5, 0.5)), ((1, 2), (4, 2), (1, 4))],
)
def test_slopes(x, y, expected):
    assert tuple(slopes(x, y)) == expected


def test_slopes_length_mismatch():
    with pytest.raises(DimensionMismatch):
        slopes((1, 2), (1, 2, 3))


@pytest.mark.parametrize("x, y, expected", [((1, 2, 3), (2, 4, 6), 1), ((1, 1), (1, 3), 3), ((1, 2), (4, 2), 4)])
def test_dist(x, y, expected):
    assert dist(x, y) == expected
    assert dist(y, x) == pytest.approx(expected, rel=1e-15)


@given(arrays(np.float64, 5, elements=positive), arrays(np.float64, 5, elements=positive))
def test_dist_at_least_one(x, y):
    assert dist(x, y) >= 1


@given(arrays(np.float64, 4, elements=positive), st.sampled_from([0.125, 0.5, 2.0, 8.0]))
def test_dist_proportional_is_one(x, c):
    assert dist(x, c * x) == 1


@pytest.mark.parametrize("a, expected", [([[2, 1], [1, 2]], 4), ([[1, 2], [2, 4]], 1), ([[1, 2], [1, 1]], 0.5)])
def test_oriented_distortion(a, expected):
    assert oriented_distortion(a) == expected
    assert (oriented_distortion(a) >= 1) == (np.linalg.det(np.asarray(a, float)) >= -1e-12)


def test_oriented_distortion_shape():
    with pytest.raises(NotTwoByTwo):
        oriented_distortion([[1, 2, 3], [4, 5, 6]])


def test_distortion_examples():
    assert quadruple_distortion([[2, 1], [1, 2]]) == 4
    assert distortion([[2, 1], [1, 2]]) == 4
    assert quadruple_distortion([[1, 1, 1], [1, 2, 3]]) == 3
    assert distortion([[1, 1, 1], [1, 2, 3]]) == 3
    assert distortion(np.outer([1, 2, 3], [4, 8, 0.5])) == pytest.approx(1, rel=1e-15)


def test_distortion_single_row_or_column():
    assert distortion([[1, 5, 7]]) == 1
    assert distortion([[1], [5], [7]]) == 1


def test_distortion_stack():
    stack = np.array([[[2, 1], [1, 2]], [[1, 2], [1, 1]]], dtype=float)
    np.testing.assert_array_equal(distortion(stack), [4, 2])


@settings(max_examples=200)
@given(matrices())
def test_distortion_matches_quadruple_scan(a):
    assert distortion(a) == pytest.approx(quadruple_distortion(a), rel=1e-12)


@given(matrices(), st.data())
def test_scaling_invariance(a, data):
    d1 = data.draw(arrays(np.float64, a.shape[0], elements=positive))
    d2 = data.draw(arrays(np.float64, a.shape[1], elements=positive))
    scaled = d1[:, None] * a * d2[None, :]
    assert distortion(scaled) == pytest.approx(distortion(a), rel=1e-12)


@given(matrices())
def test_transpose_invariance(a):
    assert distortion(a.T) == pytest.approx(distortion(a), rel=1e-12)


@given(arrays(np.float64, (2, 2), elements=positive))
def test_swap_rows_reciprocal(a):
    swapped = a[::-1]
    assert oriented_distortion(swapped) == pytest.approx(1 / oriented_distortion(a), rel=1e-14)
    assert distortion(swapped) == pytest.approx(distortion(a), rel=1e-14)
    assert distortion(a) == pytest.approx(max(oriented_distortion(a), 1 / oriented_distortion(a)), rel=1e-14)


def test_cross_ratio_trivial():
    x, y = np.array([1.0, 2.0, 3.0]), np.array([3.0, 1.0, 2.0])
    assert cross_ratio(x, x, y, x) == pytest.approx(1, rel=1e-15)
    assert cross_ratio(x, y, x, x) == pytest.approx(1, rel=1e-15)


def test_cross_ratio_matches_product_block():
    x, y, u, v = (1, 1), (1, 4), (1, 0.25), (0.25, 1)
    rows = np.array([x, y], dtype=float)
    cols = np.array([u, v], dtype=float).T
    assert cross_ratio(x, y, u, v) == 2.125
    assert cross_ratio(x, y, u, v) == oriented_distortion(rows @ cols)


@given(st.integers(1, 7).flatmap(lambda d: arrays(np.float64, (4, d), elements=positive)))
def test_cross_ratio_properties(vs):
    x, y, u, v = vs
    value = cross_ratio(x, y, u, v)
    assert value == pytest.approx(four_vector_value(x, y, u, v), rel=1e-14)
    assert value * cross_ratio(y, x, u, v) == pytest.approx(1, rel=1e-14)
    block = np.array([[x @ u, x @ v], [y @ u, y @ v]])
    assert value == oriented_distortion(block)


def test_multiply():
    np.testing.assert_array_equal(multiply([[1, 1], [1, 4]], [[1, 1], [0.25, 1]]), [[1.25, 2], [2, 5]])
    np.testing.assert_array_equal(multiply([[1], [1]], [[1, 1]]), np.ones((2, 2)))
    with pytest.raises(DimensionMismatch):
        multiply(np.ones((2, 3)), np.ones((2, 2)))
