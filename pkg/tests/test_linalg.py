from fractions import Fraction

import pytest

from nlie.errors import DimensionMismatchError, FieldMismatchError
from nlie.fields import GF, QQ
from nlie.linalg import (
    Matrix,
    coordinate_subspace,
    full_subspace,
    span,
    subspace_intersect,
    subspace_sum,
    zero_subspace,
)

from oracles import rref_fractions, span_members_fp


def test_rref_identity_fixed():
    M = Matrix.identity(QQ, 3)
    R, pivots = M.rref()
    assert R == M
    assert pivots == (0, 1, 2)


def test_rref_collapses_dependent_rows():
    M = Matrix.from_rows(QQ, [[2, 4], [1, 2]])
    R, pivots = M.rref()
    assert pivots == (0,)
    assert R.rows[0] == (Fraction(1), Fraction(2))
    assert R.rows[1] == (Fraction(0), Fraction(0))


def test_rref_gf2_hand_computed():
    # hand Gaussian elimination: {(1,1,0),(0,1,1)} -> {(1,0,1),(0,1,1)}
    M = Matrix.from_rows(GF(2), [[1, 1, 0], [0, 1, 1]])
    R, pivots = M.rref()
    assert R.rows == ((1, 0, 1), (0, 1, 1))
    assert pivots == (0, 1)


def test_rref_matches_fraction_oracle():
    rows = [[3, 1, 4, 1], [5, 9, 2, 6], [8, 2, 6, 4]]
    R, _ = Matrix.from_rows(QQ, rows).rref()
    expected = rref_fractions(rows)
    assert [list(r) for r in R.rows[: len(expected)]] == expected


def test_rref_idempotent():
    M = Matrix.from_rows(QQ, [[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    R, _ = M.rref()
    R2, _ = R.rref()
    assert R == R2


def test_kernel_zero_matrix_is_full():
    K = Matrix.zeros(QQ, 2, 3).kernel()
    assert K.dim == 3
    assert K == full_subspace(QQ, 3)


def test_kernel_identity_is_zero():
    assert Matrix.identity(QQ, 4).kernel().dim == 0


def test_kernel_gf2_single_row_by_enumeration():
    K = Matrix.from_rows(GF(2), [[1, 1]]).kernel()
    members = span_members_fp(K.basis, 2, 2)
    brute = {v for v in [(0, 0), (0, 1), (1, 0), (1, 1)]
             if (v[0] + v[1]) % 2 == 0}
    assert members == brute
    assert K.dim == 1


def test_rank_nullity():
    M = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert M.rank() + M.kernel().dim == M.ncols


def test_span_empty_is_zero():
    S = span(QQ, 4, [])
    assert S.dim == 0
    assert S == zero_subspace(QQ, 4)


def test_span_canonicalizes():
    S = span(QQ, 3, [(1, 0, 0), (1, 1, 0)])
    assert S == coordinate_subspace(QQ, 3, (0, 1))


def test_span_collinear():
    assert span(QQ, 3, [(1, 2, 3), (2, 4, 6)]).dim == 1


def test_sum_with_zero_is_identity():
    U = span(QQ, 3, [(1, 2, 0)])
    assert subspace_sum(U, zero_subspace(QQ, 3)) == U


def test_intersect_coordinate_axes():
    U = coordinate_subspace(QQ, 2, (0,))
    W = coordinate_subspace(QQ, 2, (1,))
    assert subspace_intersect(U, W).dim == 0


def test_sum_intersect_gf2_by_enumeration():
    U = span(GF(2), 2, [(1, 1)])
    W = span(GF(2), 2, [(0, 1)])
    total = subspace_sum(U, W)
    meet = subspace_intersect(U, W)
    assert total == full_subspace(GF(2), 2)
    assert meet.dim == 0
    mu = span_members_fp(U.basis, 2, 2)
    mw = span_members_fp(W.basis, 2, 2)
    assert span_members_fp(total.basis, 2, 2) == {
        tuple((a[i] + b[i]) % 2 for i in range(2)) for a in mu for b in mw}
    assert mu & mw == {(0, 0)}


def test_grassmann_dimension_formula():
    U = span(QQ, 4, [(1, 0, 1, 0), (0, 1, 0, 1)])
    W = span(QQ, 4, [(1, 1, 1, 1), (0, 0, 1, 1)])
    s = subspace_sum(U, W)
    i = subspace_intersect(U, W)
    assert s.dim + i.dim == U.dim + W.dim


def test_subspace_equality_is_representation_equality():
    A = span(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    B = span(QQ, 3, [(1, 0, -1), (0, 1, 1)])
    assert A == B
    assert hash(A) == hash(B)


def test_contains_vector_and_subspace():
    U = span(QQ, 3, [(1, 0, 1), (0, 1, 0)])
    assert U.contains_vector((1, 1, 1))
    assert not U.contains_vector((0, 0, 1))
    assert U.contains(span(QQ, 3, [(1, 1, 1)]))
    assert span(QQ, 3, [(1, 1, 1)]) <= U


def test_field_and_ambient_mismatches():
    with pytest.raises(FieldMismatchError):
        subspace_sum(span(QQ, 2, [(1, 0)]), span(GF(2), 2, [(1, 0)]))
    with pytest.raises(DimensionMismatchError):
        subspace_intersect(span(QQ, 2, [(1, 0)]), span(QQ, 3, [(1, 0, 0)]))
    with pytest.raises(DimensionMismatchError):
        span(QQ, 2, [(1, 0, 0)])


def test_matrix_inverse_roundtrip():
    M = Matrix.from_rows(QQ, [[2, 1], [1, 1]])
    assert (M @ M.inverse()) == Matrix.identity(QQ, 2)
    assert M.det() == Fraction(1)


def test_singular_inverse_raises():
    with pytest.raises(DimensionMismatchError):
        Matrix.from_rows(QQ, [[1, 2], [2, 4]]).inverse()


def test_coordinates_in_rref_basis():
    U = span(QQ, 3, [(1, 0, 2), (0, 1, 3)])
    v = (2, -1, 1)
    coords = U.coordinates(v)
    assert coords == (Fraction(2), Fraction(-1))
