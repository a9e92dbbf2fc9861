"""Exact linear algebra over Q: rref, kernels, images, solvability."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlya.errors import NotContainedError
from hlya.exactlin import (
    Matrix,
    Subspace,
    image_basis,
    kernel_basis,
    quotient_dim,
    rank,
    rat,
    rat_str,
    rref,
    solve,
    vstack,
)


def test_rat_parses_strings_ints_fractions():
    assert rat("-3/2") == Fraction(-3, 2)
    assert rat(7) == Fraction(7)
    assert rat(Fraction(1, 3)) == Fraction(1, 3)
    assert rat_str(Fraction(-3, 2)) == "-3/2"
    assert rat_str(Fraction(7)) == "7"


def test_rref_known_matrix():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    reduced, pivots = rref(m)
    assert pivots == [0, 1]
    assert reduced.data[0] == [1, 0, 1]
    assert reduced.data[1] == [0, 1, 1]
    assert reduced.data[2] == [0, 0, 0]


def test_rref_idempotent():
    m = Matrix([[2, 1, 0], [1, 1, 7], [3, 2, 7]])
    r1, _ = rref(m)
    r2, _ = rref(r1)
    assert r1 == r2


def test_kernel_and_image_rank_nullity():
    m = Matrix([[1, 2, 3], [2, 4, 6]])
    k = kernel_basis(m)
    im = image_basis(m)
    assert k.dim + im.dim == m.cols
    assert k.dim == 2
    for j in range(k.dim):
        assert all(x == 0 for x in m.apply(k.basis.column(j)))


def test_solve_exact_and_unsolvable():
    m = Matrix([[1, 2], [3, 4]])
    b = [rat(5), rat(6)]
    x = solve(m, b)
    assert m.apply(x) == b
    singular = Matrix([[1, 2], [2, 4]])
    assert solve(singular, [rat(0), rat(1)]) is None


def test_subspace_equality_is_span_equality():
    s1 = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    s2 = Subspace(3, [[1, 1, 0], [1, -1, 0]])
    s3 = Subspace(3, [[1, 0, 0], [0, 0, 1]])
    assert s1 == s2
    assert s1 != s3
    assert s1.contains([rat(5), rat(-7), rat(0)])
    assert not s1.contains([rat(0), rat(0), rat(1)])


def test_quotient_dim_and_containment_guard():
    z = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace(3, [[1, 1, 0]])
    assert quotient_dim(z, b) == 1
    outside = Subspace(3, [[0, 0, 1]])
    with pytest.raises(NotContainedError):
        quotient_dim(z, outside)


def test_vstack_and_matmul_shapes():
    top = Matrix([[1, 0], [0, 1]])
    bottom = Matrix([[2, 3]])
    assert vstack(top, bottom).rows == 3
    assert top.matmul(Matrix([[1], [2]])).column(0) == [rat(1), rat(2)]


def test_empty_shapes_survive():
    # zero-row matrices must keep their column count for later products
    m = Matrix.zeros(0, 5)
    assert m.cols == 5
    assert kernel_basis(m).dim == 5
    assert m.apply([rat(0)] * 5) == []


_small = st.integers(min_value=-5, max_value=5)


@given(st.lists(st.lists(_small, min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_rank_nullity_random(rows):
    m = Matrix(rows)
    assert kernel_basis(m).dim + rank(m) == m.cols


@given(
    st.lists(st.lists(_small, min_size=3, max_size=3), min_size=2, max_size=3),
    st.lists(_small, min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_solve_result_is_exact_random(rows, coeffs):
    m = Matrix(rows)
    # right-hand side drawn from the image so a solution must exist
    b = m.apply([rat(c) for c in coeffs])
    x = solve(m, b)
    assert x is not None
    assert m.apply(x) == b
