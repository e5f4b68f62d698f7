from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pistar.exact import (
    RatMatrix,
    RowEchelon,
    format_rational,
    kernel_basis,
    parse_rational,
    primitive,
    rank,
    rref,
    subspace_contains,
)


def test_rank_examples():
    assert rank(RatMatrix([], cols=0)) == 0
    assert rank(RatMatrix.identity(3)) == 3
    assert rank([[1, 2], [2, 4]]) == 1


def test_rref_examples():
    r, piv = rref([[2, 4]])
    assert r == RatMatrix([[1, 2]]) and piv == [0]
    r, piv = rref(RatMatrix.identity(3))
    assert r == RatMatrix.identity(3) and piv == [0, 1, 2]
    r, piv = rref(RatMatrix.zeros(2, 3))
    assert r == RatMatrix.zeros(2, 3) and piv == []


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(3)).shape[0] == 0
    assert kernel_basis(RatMatrix.zeros(2, 3)).shape[0] == 3
    (v,) = kernel_basis([[1, 1]]).tolist()
    assert v[0] == -v[1] != 0


def test_subspace_contains_examples():
    assert subspace_contains([[1, 0]], [2, 0])
    assert not subspace_contains([[1, 0]], [0, 1])
    assert subspace_contains(RatMatrix([], cols=2), [0, 0])


def test_rational_text():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


def test_big_integers_survive():
    big = 10**40 + 7
    assert rank([[big, 1], [big * 3, 3]]) == 1
    assert rank([[big, 1], [big * 3, 4]]) == 2


def test_primitive():
    assert primitive({0: Fraction(2, 3), 2: Fraction(-4, 3)}) == {0: 1, 2: -2}


small = st.integers(min_value=-5, max_value=5)


@st.composite
def matrices(draw):
    r = draw(st.integers(0, 5))
    c = draw(st.integers(1, 5))
    return [[draw(small) for _ in range(c)] for _ in range(r)], c


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity(mc):
    m, c = mc
    M = RatMatrix(m, cols=c)
    K = kernel_basis(M)
    assert rank(M) + K.shape[0] == c
    for v in K:
        for row in m:
            assert sum(a * b for a, b in zip(row, v)) == 0


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rref_is_reduced_and_same_rank(mc):
    m, c = mc
    R, piv = rref(RatMatrix(m, cols=c))
    assert len(piv) == rank(RatMatrix(m, cols=c))
    for i, p in enumerate(piv):
        assert R[i][p] == 1
        assert all(R[k][p] == 0 for k in range(R.shape[0]) if k != i)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_echelon_agrees_with_rank(mc):
    m, c = mc
    ech = RowEchelon(c)
    for row in m:
        ech.insert({j: x for j, x in enumerate(row) if x})
    assert ech.rank == rank(RatMatrix(m, cols=c))
    for row in m:
        assert ech.contains({j: x for j, x in enumerate(row) if x})


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3]])
