from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strata.errors import DimensionMismatch, FieldMismatch
from strata.exactla import (GF, QQ, EchelonBasis, Matrix, Mod, Subspace, is_rref, kernel_basis, rref, solve,
                            span)


def test_scalars_normalised():
    assert QQ(Fraction(2, 4)) == Fraction(1, 2)
    assert QQ("-3/6") == Fraction(-1, 2)
    F = GF(7)
    assert F(-1).v == 6
    assert F(Fraction(1, 2)).v == 4
    assert (F(3) * F(5)).v == 1


def test_field_validation():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(FieldMismatch):
        GF(3)(3) + GF(5)(1)
    with pytest.raises(ValueError):
        GF(3)(Fraction(1, 3))


def test_format_and_parse():
    assert QQ.format(Fraction(-3, 4)) == "-3/4"
    assert QQ.format(Fraction(5)) == "5"
    assert GF(5).format(GF(5)(-1)) == "4"
    assert GF(5).parse("1/2") == GF(5)(3)


def test_rref_examples():
    R, rank, piv = rref(Matrix(QQ, [], 0))
    assert (R.nrows, R.ncols, rank, piv) == (0, 0, 0, [])
    I = Matrix.identity(QQ, 3)
    R, rank, piv = rref(I)
    assert R == I and rank == 3 and piv == [0, 1, 2]
    R, rank, piv = rref(Matrix(QQ, [[1, 2], [2, 4]]))
    assert R == Matrix(QQ, [[1, 2], [0, 0]]) and rank == 1 and piv == [0]


def test_solve_examples():
    assert solve(Matrix.identity(QQ, 2), [3, 5]) == [3, 5]
    assert solve(Matrix(QQ, [[1, 1]]), [2]) == [2, 0]
    assert solve(Matrix(QQ, [[1], [1]]), [0, 1]) is None
    with pytest.raises(DimensionMismatch):
        solve(Matrix.identity(QQ, 2), [1, 2, 3])


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 3)).dim == 0
    K = kernel_basis(Matrix(QQ, [[1, 2]]))
    assert K.rows == [[1, Fraction(-1, 2)]]
    # substitution check against the hand solution (-2, 1)
    assert K.contains([-2, 1])
    assert kernel_basis(Matrix.zeros(QQ, 2, 3)).dim == 3


def test_subspace_examples():
    U = Subspace(QQ, 2, [[1, 0]])
    V = Subspace(QQ, 2, [[0, 1]])
    assert (U + V).dim == 2 and (U & V).dim == 0
    assert (U + U) == U and (U & U) == U and U.equals(U)
    U = Subspace(QQ, 3, [[1, 1, 0]])
    V = Subspace(QQ, 3, [[1, 1, 1], [0, 0, 1]])
    assert (U & V) == U
    with pytest.raises(DimensionMismatch):
        U + Subspace(QQ, 2, [[1, 0]])


def test_subspace_coordinates_at_pivots():
    U = Subspace(QQ, 3, [[1, 2, 3], [0, 1, 1]])
    v = [2, 5, 7]
    c = U.coordinates(v)
    assert U.combine(c) == [QQ(x) for x in v]
    assert U.coordinates([0, 0, 1]) is None


def test_echelon_basis_relation():
    eb = EchelonBasis(QQ, 2, track=True)
    assert eb.add([1, 0]) is True
    assert eb.add([1, 1]) is True
    rel = eb.add([3, 2])
    # 1*(1,0) + 2*(1,1) = (3,2), so the relation is (-1, -2, 1)
    assert rel == [-1, -2, 1]


FIELDS = [QQ, GF(2), GF(5)]


def matrices(max_rows=4, max_cols=4):
    return st.tuples(st.sampled_from(FIELDS), st.integers(0, max_rows), st.integers(0, max_cols)).flatmap(
        lambda t: st.lists(st.lists(st.integers(-3, 3), min_size=t[2], max_size=t[2]), min_size=t[1],
                           max_size=t[1]).map(lambda rows, t=t: Matrix(t[0], rows, t[2])))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(M):
    R, rank, piv = rref(M)
    assert is_rref(R)
    R2, rank2, piv2 = rref(R)
    assert R2 == R and rank2 == rank and piv2 == piv


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_exact(M, data):
    x = [M.field(v) for v in data.draw(st.lists(st.integers(-3, 3), min_size=M.ncols, max_size=M.ncols))]
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None
    assert M.apply(y) == b


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    assert M.rank() + kernel_basis(M).dim == M.ncols


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 4), st.data())
def test_dimension_formula(F, n, data):
    vec = st.lists(st.integers(-2, 2), min_size=n, max_size=n)
    U = span(F, n, data.draw(st.lists(vec, max_size=4)))
    V = span(F, n, data.draw(st.lists(vec, max_size=4)))
    W = U & V
    assert U.dim + V.dim == (U + V).dim + W.dim
    assert U.contains_subspace(W) and V.contains_subspace(W)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17])
def test_fermat(p):
    F = GF(p)
    for a in F.elements():
        assert a ** p == a


def test_mod_inverse():
    F = GF(13)
    for a in F.elements()[1:]:
        assert a * (F.one / a) == F.one
    assert isinstance(F.one, Mod)
