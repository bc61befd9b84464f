from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilmult.exactla import (
    DimensionMismatch,
    Matrix,
    Subspace,
    basis_vector,
    kernel_basis,
    rank,
    rref,
    vector,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = draw(st.lists(st.lists(rationals, min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return Matrix.from_rows(entries, cols=cols)


@st.composite
def subspaces(draw, ambient=6):
    count = draw(st.integers(min_value=0, max_value=ambient))
    vecs = draw(st.lists(st.lists(rationals, min_size=ambient, max_size=ambient),
                         min_size=count, max_size=count))
    return Subspace.from_vectors(ambient, vecs)


def test_rref_identity():
    m = Matrix.identity(3)
    echelon, r = rref(m)
    assert r == 3
    assert echelon == m


def test_rref_zero():
    echelon, r = rref(Matrix.zero(2, 2))
    assert r == 0
    assert echelon.is_zero


def test_rref_proportional_rows():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    _, r = rref(m)
    assert r == 1


@given(matrices())
@settings(max_examples=60)
def test_rref_idempotent(m):
    echelon, r = rref(m)
    again, r2 = rref(echelon)
    assert again == echelon
    assert r2 == r


@given(matrices())
@settings(max_examples=60)
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices())
@settings(max_examples=60)
def test_kernel_dimension(m):
    assert kernel_basis(m).dim + rank(m) == m.cols


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(3)).is_zero


def test_kernel_of_zero_is_full():
    k = kernel_basis(Matrix.zero(2, 3))
    assert k.dim == 3


def test_kernel_single_equation():
    k = kernel_basis(Matrix.from_rows([[1, 1, 0]]))
    assert k.dim == 2
    assert k.contains(vector([1, -1, 0]))


def test_kernel_vectors_annihilate():
    m = Matrix.from_rows([[1, 2, 3], [0, 1, 1]])
    k = kernel_basis(m)
    for row in k.basis.entries:
        assert all(x == 0 for x in m.apply(row))


def test_subspace_sum_of_axes():
    x = Subspace.from_vectors(3, [basis_vector(3, 0)])
    y = Subspace.from_vectors(3, [basis_vector(3, 1)])
    assert x.sum(y).dim == 2


def test_subspace_self_intersection():
    plane = Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 1]])
    assert plane.intersect(plane) == plane


def test_quotient_coords_single_vector():
    line = Subspace.from_vectors(3, [basis_vector(3, 2)])
    coords = line.coords_in_quotient(Subspace.zero(3), basis_vector(3, 2))
    assert coords == (Fraction(1),)


def test_quotient_coords_reference_rows():
    # coordinates must reconstruct the vector against the quotient rows
    space = Subspace.from_vectors(4, [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    sub = Subspace.from_vectors(4, [[0, 1, 0, 0]])
    v = vector([2, 3, 2, -1])
    coords = space.coords_in_quotient(sub, v)
    rows = space.quotient_basis_rows(sub)
    recombined = [sum(c * row[k] for c, row in zip(coords, rows))
                  for k in range(4)]
    assert sub.reduce(v) == sub.reduce(recombined)


def test_quotient_requires_containment():
    space = Subspace.from_vectors(3, [[1, 0, 0]])
    with pytest.raises(DimensionMismatch):
        space.coords_in_quotient(Subspace.zero(3), vector([0, 1, 0]))


@given(subspaces(), subspaces())
@settings(max_examples=60)
def test_grassmann_identity(a, b):
    total = a.sum(b)
    meet = a.intersect(b)
    assert total.dim + meet.dim == a.dim + b.dim
    assert total.contains_subspace(a)
    assert total.contains_subspace(b)
    assert a.contains_subspace(meet)
    assert b.contains_subspace(meet)


@given(matrices(max_dim=4), matrices(max_dim=4))
@settings(max_examples=40)
def test_matmul_shape_guard(a, b):
    if a.cols == b.rows:
        assert (a @ b).rows == a.rows
    else:
        with pytest.raises(DimensionMismatch):
            a @ b
