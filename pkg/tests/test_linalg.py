"""
Tests for matrices over finite fields.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convertible_codes.errors import (
    BruteForceLimitError,
    FieldMismatchError,
    InconsistentSystemError,
    PreconditionError,
    SingularMatrixError,
)
from convertible_codes.gf import FieldSpec
from convertible_codes.linalg import (
    MatrixGF,
    OrderedSet,
    cauchy,
    determinant,
    diagonal,
    extended_vandermonde,
    horizontal_concat,
    identity,
    inverse,
    is_superregular,
    rank,
    scalar_multiple_of,
    scale_columns,
    solve,
    submatrix,
    vandermonde,
)
from convertible_codes.mds import SYSTEMATIC, MdsCode, verify_mds

GF7 = FieldSpec(7)


def test_matrix_is_immutable(gf13):
    """Test that the array handed out is a copy of the stored entries."""
    m = MatrixGF(gf13, [[1, 2], [3, 4]])
    arr = m.array
    arr[0, 0] = 9
    assert m.entries() == [[1, 2], [3, 4]]
    assert m.shape == (2, 2)
    assert m.transpose().entries() == [[1, 3], [2, 4]]


def test_matrix_rejects_bad_shapes(gf13):
    """Test that non-2-D and empty entries are rejected."""
    with pytest.raises(PreconditionError):
        MatrixGF(gf13, [1, 2, 3])
    with pytest.raises(PreconditionError):
        MatrixGF(gf13, [[1, 2]]) @ MatrixGF(gf13, [[1, 2]])
    with pytest.raises(FieldMismatchError):
        MatrixGF(gf13, [[1]]) @ MatrixGF(FieldSpec(11), [[1]])


def test_ordered_set_rejects_repeats(gf13):
    """Test that ordered sets must hold distinct in-range elements."""
    with pytest.raises(PreconditionError):
        OrderedSet(gf13, (1, 2, 1))
    with pytest.raises(PreconditionError):
        OrderedSet(gf13, (13,))
    with pytest.raises(PreconditionError):
        OrderedSet(gf13, (1, 2)) + OrderedSet(gf13, (2, 3))


def test_cauchy(gf13):
    """Test Cauchy entries 1 / (x - y) and the disjointness requirement."""
    assert cauchy(OrderedSet(gf13, (2,)), OrderedSet(gf13, (1,))).entries() == [[1]]
    assert cauchy(OrderedSet(gf13, (2,)), OrderedSet(gf13, (1, 12, 0))).entries() == [[1, 9, 7]]
    with pytest.raises(PreconditionError):
        cauchy(OrderedSet(gf13, (0,)), OrderedSet(gf13, (0,)))


def test_vandermonde(gf13):
    """Test Vandermonde rows of powers of the evaluation points."""
    assert vandermonde(OrderedSet(gf13, (1, 2, 4, 8)), 2).entries() == [[1, 1, 1, 1], [1, 2, 4, 8]]
    assert vandermonde(OrderedSet(gf13, (3, 6, 12, 11)), 2).entries() == [
        [1, 1, 1, 1],
        [3, 6, 12, 11],
    ]
    assert vandermonde(OrderedSet(gf13, (5, 7)), 1).entries() == [[1, 1]]
    assert vandermonde(OrderedSet(gf13, (0, 3)), 3).entries() == [[1, 1], [0, 3], [0, 9]]


def test_extended_vandermonde(gf13, gf8):
    """Test that extended forms append standard basis columns."""
    assert extended_vandermonde(OrderedSet(gf13, (0, 9)), 3).entries() == [
        [1, 1, 0],
        [0, 9, 0],
        [0, 3, 1],
    ]
    assert extended_vandermonde(OrderedSet(gf13, ()), 2).entries() == [[0], [1]]
    assert extended_vandermonde(OrderedSet(gf8, (1,)), 3, triply=True).entries() == [
        [1, 0, 0],
        [1, 1, 0],
        [1, 0, 1],
    ]
    with pytest.raises(PreconditionError):
        extended_vandermonde(OrderedSet(gf8, (1,)), 4, triply=True)


def test_inverse_rank_determinant(gf13):
    """Test inversion, rank and determinant of a small Vandermonde block."""
    v = vandermonde(OrderedSet(gf13, (0, 9)), 2)
    assert inverse(v).entries() == [[1, 10], [0, 3]]
    assert v @ inverse(v) == identity(gf13, 2)
    assert determinant(v) == 9
    assert rank(vandermonde(OrderedSet(gf13, (1, 2, 4, 8)), 3)) == 3
    with pytest.raises(SingularMatrixError):
        inverse(MatrixGF(gf13, [[1, 2], [2, 4]]))


def test_solve(gf13):
    """Test exact, tall and inconsistent linear systems."""
    b = MatrixGF(gf13, [[3], [5]])
    assert solve(identity(gf13, 2), b) == b
    tall = MatrixGF(gf13, [[1, 0], [0, 1], [1, 1]])
    assert solve(tall, MatrixGF(gf13, [[3], [5], [8]])).entries() == [[3], [5]]
    with pytest.raises(InconsistentSystemError):
        solve(tall, MatrixGF(gf13, [[3], [5], [9]]))
    with pytest.raises(SingularMatrixError):
        solve(MatrixGF(gf13, [[1, 2], [2, 4]]), b)


def test_submatrix_concat_and_scaling(gf13):
    """Test slicing, concatenation and column scaling helpers."""
    m = MatrixGF(gf13, [[1, 2, 3], [4, 5, 6]])
    assert submatrix(m, cols=[2, 0]).entries() == [[3, 1], [6, 4]]
    assert submatrix(m, rows=[1]).entries() == [[4, 5, 6]]
    assert horizontal_concat(m, identity(gf13, 2)).shape == (2, 5)
    assert scale_columns(m, [1, 2, 0]).entries() == [[1, 4, 0], [4, 10, 0]]
    assert scale_columns(m, [2, 3, 4]) == m @ diagonal(gf13, [2, 3, 4])


def test_scalar_multiple_of(gf13):
    """Test detection of one column as a scalar multiple of another."""
    v = gf13.array([3, 7, 1])
    assert scalar_multiple_of(v, v) == 1
    assert scalar_multiple_of(v * gf13.array(12), v) == 12
    assert scalar_multiple_of(gf13.array([3, 7, 2]), v) is None
    with pytest.raises(PreconditionError):
        scalar_multiple_of(v, gf13.array([0, 0, 0]))


def test_superregular(gf13):
    """Test that Cauchy matrices pass and zero entries fail."""
    c = cauchy(OrderedSet(gf13, (2, 4, 8, 3)), OrderedSet(gf13, (1, 12, 0)))
    assert is_superregular(c)
    assert not is_superregular(MatrixGF(gf13, [[1, 0], [1, 1]]))
    assert not is_superregular(MatrixGF(gf13, [[1, 1], [1, 1]]))


def test_superregular_cap(gf13):
    """Test that oversized inputs hit the brute-force cap."""
    big = MatrixGF(gf13, np.ones((20, 12), dtype=int))
    with pytest.raises(BruteForceLimitError):
        is_superregular(big)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda rows: st.integers(1, 3).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(0, 6), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )
)
def test_superregular_iff_systematic_code_is_mds(entries):
    """Test that P is superregular exactly when [I | P] generates an MDS code."""
    p = MatrixGF(GF7, entries)
    code = MdsCode(p.rows + p.cols, p.rows, SYSTEMATIC, p)
    assert is_superregular(p) == verify_mds(code)
