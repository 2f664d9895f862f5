import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from posdistort import NonPositiveEntry, ParseError
from posdistort.matrixfile import format_matrices, parse_matrices, read_matrices, write_matrices


def test_parse_blocks_comments_and_notation():
    text = """# two matrices
1 2   # first row
3 4
# a comment line inside the gap

 5e-1 1.5E+2
2.0\t7
"""
    a, b = parse_matrices(text)
    np.testing.assert_array_equal(a, [[1, 2], [3, 4]])
    np.testing.assert_array_equal(b, [[0.5, 150], [2, 7]])


def test_comment_line_does_not_split_matrix():
    (a,) = parse_matrices("1 2\n# note\n3 4\n")
    assert a.shape == (2, 2)


def test_multiple_blank_lines():
    assert len(parse_matrices("1\n\n\n\n2\n")) == 2


def test_ragged_names_line():
    with pytest.raises(ParseError) as exc:
        parse_matrices("1 2\n3")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_bad_token_names_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_matrices("1 2\n3 x4\n")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_nonpositive_entry():
    with pytest.raises(NonPositiveEntry) as exc:
        parse_matrices("1 2\n3 -4\n")
    assert exc.value.index == (1, 1)
    assert "line 2" in str(exc.value)


@given(
    st.lists(
        st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
            lambda s: arrays(np.float64, s, elements=st.floats(1e-300, 1e300))
        ),
        min_size=1,
        max_size=4,
    )
)
def test_round_trip_bit_exact(matrices):
    back = parse_matrices(format_matrices(matrices))
    assert len(back) == len(matrices)
    for a, b in zip(matrices, back):
        assert a.shape == b.shape
        assert a.tobytes() == b.tobytes()


def test_file_round_trip(tmp_path):
    path = tmp_path / "m.txt"
    mats = [np.array([[0.1, 1 / 3], [2.0, 7.0]]), np.array([[1e-9, 4.0, 5.0]])]
    write_matrices(path, mats)
    for a, b in zip(mats, read_matrices(path)):
        np.testing.assert_array_equal(a, b)
