from fractions import Fraction

import pytest

from oracles import (brute_division, brute_idempotents, brute_radical, full_matrix, group_algebra_cyclic,
                     is_nilpotent, poly_quotient, truncated, upper_triangular)
from strata import poly
from strata.algcore import (Algebra, Quotient, algebra_verify, corner, division_verdict, ideal_generated,
                            is_idempotent_subideal, local_verdict, multiply, pim_classes, primitive_idempotent_coords,
                            primitive_idempotents, radical, regular_rep, using)
from strata.errors import MethodInapplicable, NotAnIdealError
from strata.exactla import GF, QQ, Matrix, Subspace


def max_orthogonal_family(A):
    idems = [x for x in brute_idempotents(A) if any(x)]

    def orth(x, y):
        return not any(A.mul(x, y)) and not any(A.mul(y, x))

    def grow(chosen, start):
        best = len(chosen)
        for t in range(start, len(idems)):
            if all(orth(idems[t], c) for c in chosen):
                best = max(best, grow(chosen + [idems[t]], t + 1))
        return best

    return grow([], 0)


def k1(F=QQ):
    return Algebra(F, 1, [[[1]]], [1])


# ---------------------------------------------------------------- polynomials


def test_gcdext_and_crt():
    F = QQ
    f = [F(-1), F(0), F(1)]  # x^2 - 1
    g = [F(0), F(1)]  # x
    h, s, t = poly.gcdext(f, g, F)
    assert h == [F(1)]
    assert poly.add(poly.mul(s, f, F), poly.mul(t, g, F), F) == [F(1)]
    e = poly.crt_idempotent([F(-1), F(1)], [F(1), F(1)], F)  # 1 mod (x-1), 0 mod (x+1)
    assert poly.divmod_(e, [F(-1), F(1)], F)[1] == [F(1)]
    assert poly.divmod_(e, [F(1), F(1)], F)[1] == []


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)])
def test_factor_reconstructs(F):
    p = [F(c) for c in [-1, 0, 0, 0, 1]]  # x^4 - 1
    prod = [F.one]
    for fac, m in poly.factor(p, F):
        assert poly.factor([*fac], F) == [(fac, 1)]
        prod = poly.mul(prod, poly.power(fac, m, F), F)
    assert prod == p


# ---------------------------------------------------------------- algebras


def test_algebra_verify_examples():
    assert algebra_verify(k1()).ok
    T2, _ = upper_triangular(2, QQ)
    assert algebra_verify(T2).ok
    bad = Algebra(QQ, 1, [[[1]]], [2])
    rep = algebra_verify(bad)
    assert not rep.ok and rep.unit_violations


def test_multiply_and_regular_rep():
    T2, _ = upper_triangular(2, QQ)
    E11, E12, E22 = (T2.basis_element(i) for i in range(3))
    assert multiply(E11, E12) == E12
    assert multiply(T2.one(), E22) == E22
    k2 = truncated(2, QQ)
    x = k2.basis_element(1)
    assert (x * x).is_zero()
    assert regular_rep(k2.one()) == Matrix.identity(QQ, 2)
    assert regular_rep(x, "left") == Matrix(QQ, [[0, 0], [1, 0]])
    assert regular_rep(E11, "right").rank() == 1


def test_left_regular_is_homomorphism():
    A, _ = upper_triangular(3, QQ)
    for i in range(A.dim):
        for j in range(A.dim):
            assert A.left_matrix(A.products[i][j]) == A.left_basis_matrices[i] @ A.left_basis_matrices[j]


def test_ideal_generated_examples():
    T2, _ = upper_triangular(2, QQ)
    assert ideal_generated(T2, [T2.unit]).dim == 3
    assert ideal_generated(T2, [T2.basis_vector(0)]) == Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    k2 = truncated(2, QQ)
    assert ideal_generated(k2, [[0, 1]]) == Subspace(QQ, 2, [[0, 1]])


def test_quotient_examples():
    T2, _ = upper_triangular(2, QQ)
    Q0 = Quotient(T2, Subspace.zero(QQ, 3))
    assert Q0.algebra.dim == 3 and Q0.proj == Matrix.identity(QQ, 3)
    Q = Quotient(T2, Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]]))
    assert Q.algebra.dim == 1 and Q.algebra.unit == [1]
    assert Q.proj @ Q.section == Matrix.identity(QQ, 1)
    with pytest.raises(NotAnIdealError) as info:
        Quotient(T2, Subspace(QQ, 3, [[0, 0, 1]]))
    a, v = info.value.witness
    assert T2.mul(a, v) == [0, 1, 0] or T2.mul(v, a) == [0, 1, 0]


@pytest.mark.parametrize("n", [2, 3])
def test_radical_of_upper_triangular(n):
    A, units = upper_triangular(n, QQ)
    N = radical(A)
    strict = [[1 if u == (i, j) else 0 for u in units] for (i, j) in units if i < j]
    assert N == Subspace(QQ, A.dim, strict)


def test_radical_semisimple_and_local():
    M2, _ = full_matrix(2, QQ)
    assert radical(M2).dim == 0
    assert radical(truncated(2, QQ)) == Subspace(QQ, 2, [[0, 1]])
    assert radical(truncated(2, GF(2))) == Subspace(GF(2), 2, [[0, 1]])


ORACLE_ALGEBRAS = [
    ("T2/GF2", lambda: upper_triangular(2, GF(2))[0]),
    ("T2/GF3", lambda: upper_triangular(2, GF(3))[0]),
    ("k[x]/x^2/GF2", lambda: truncated(2, GF(2))),
    ("k[x]/x^3/GF2", lambda: truncated(3, GF(2))),
    ("k[x]/x^3/GF3", lambda: truncated(3, GF(3))),
    ("GF2[C2]", lambda: group_algebra_cyclic(2, GF(2))),
    ("GF3[C3]", lambda: group_algebra_cyclic(3, GF(3))),
    ("GF2[C3]", lambda: group_algebra_cyclic(3, GF(2))),
    ("GF3[x]/(x^2+1)", lambda: poly_quotient([1, 0, 1], GF(3))),
    ("GF2[x]/(x^2+x+1)", lambda: poly_quotient([1, 1, 1], GF(2))),
    ("GF2[x]/(x^3+x+1)", lambda: poly_quotient([1, 1, 0, 1], GF(2))),
    ("GF3[x]/(x^2-1)", lambda: poly_quotient([-1, 0, 1], GF(3))),
]


@pytest.mark.parametrize("name,make", ORACLE_ALGEBRAS)
def test_radical_matches_brute_force(name, make):
    A = make()
    expected = brute_radical(A)
    N = radical(A)
    assert len(expected) == A.field.characteristic ** N.dim
    assert all(N.contains(x) for x in expected)


@pytest.mark.parametrize("name,make", ORACLE_ALGEBRAS)
def test_division_matches_brute_force(name, make):
    A = make()
    truth = brute_division(A)
    assert (division_verdict(A).status == "Division") == truth
    # the non-exhaustive route must agree as well
    assert (division_verdict(A, exhaustion_cap=1).status == "Division") == truth
    if truth:
        assert local_verdict(A).status == "Local"


@pytest.mark.parametrize("name,make", ORACLE_ALGEBRAS)
def test_primitive_idempotents_complete(name, make):
    A = make()
    prims = primitive_idempotent_coords(A)
    total = A.zero()
    for i, e in enumerate(prims):
        assert A.mul(e, e) == e
        for j, f in enumerate(prims):
            if i != j:
                assert not any(A.mul(e, f))
        total = A.add(total, e)
    assert total == A.unit
    # a complete primitive set is a largest family of pairwise orthogonal nonzero idempotents
    assert len(prims) == max_orthogonal_family(A)


def test_radical_properties():
    for A in [upper_triangular(3, QQ)[0], truncated(3, GF(2)), group_algebra_cyclic(4, GF(2))]:
        N = radical(A)
        assert ideal_generated(A, N.rows) == N
        for r in N.rows:
            assert is_nilpotent(A, r)
        assert radical(Quotient(A, N).algebra).dim == 0


def test_char_p_fallback_switch():
    A = truncated(2, GF(2))
    with using(char_p_fallback=False):
        with pytest.raises(MethodInapplicable):
            radical(A, char_p_fallback=False)


def test_primitive_idempotent_examples():
    assert [list(e.coords) for e in primitive_idempotents(k1())] == [[1]]
    T2, _ = upper_triangular(2, QQ)
    assert [list(e.coords) for e in primitive_idempotents(T2)] == [[1, 0, 0], [0, 0, 1]]
    assert [list(e.coords) for e in primitive_idempotents(truncated(2, QQ))] == [[1, 0]]


def test_primitive_idempotents_of_matrix_algebras():
    for F in (QQ, GF(2), GF(3)):
        A, _ = full_matrix(2, F)
        prims = primitive_idempotent_coords(A)
        assert len(prims) == 2
        assert len(pim_classes(A)) == 1
        for e in prims:
            D, _ = corner(A, e)
            assert D.dim == 1


def test_division_examples():
    assert division_verdict(k1()).status == "Division"
    v = division_verdict(truncated(2, QQ))
    assert v.status == "NotDivision" and list(v.witness.coords) == [0, 1]
    D = poly_quotient([1, 0, 1], GF(3))
    assert division_verdict(D).status == "Division"
    assert division_verdict(D).method == "exhaustive"


def test_division_over_rationals():
    # Q(i) is a field; Q[x]/(x^2-1) splits
    assert division_verdict(poly_quotient([1, 0, 1], QQ)).status == "Division"
    v = division_verdict(poly_quotient([-1, 0, 1], QQ))
    assert v.status == "NotDivision"
    w = list(v.witness.coords)
    A = poly_quotient([-1, 0, 1], QQ)
    assert A.mul(w, w) == w


def test_local_examples():
    assert local_verdict(truncated(2, QQ)).status == "Local"
    T2, _ = upper_triangular(2, QQ)
    v = local_verdict(T2)
    assert v.status == "NotLocal"
    e = list(v.witness.coords)
    assert T2.mul(e, e) == e and e not in ([0, 0, 0], T2.unit)
    assert local_verdict(k1(GF(5))).status == "Local"


def test_is_idempotent_subideal_examples():
    T2, _ = upper_triangular(2, QQ)
    assert is_idempotent_subideal(T2, Subspace.whole(QQ, 3))
    assert is_idempotent_subideal(T2, Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]]))
    assert not is_idempotent_subideal(truncated(2, QQ), Subspace(QQ, 2, [[0, 1]]))


def test_pim_classes_upper_triangular():
    T2, _ = upper_triangular(2, QQ)
    classes = pim_classes(T2)
    assert [(c.proj_dim, c.end_dim) for c in classes] == [(1, 1), (2, 1)]


def test_pim_classes_non_split():
    # Q(i) as a one-dimensional-over-itself algebra: End of the simple is 2-dimensional over Q
    A = poly_quotient([1, 0, 1], QQ)
    (c,) = pim_classes(A)
    assert c.end_dim == 2 and c.proj_dim == 2
    assert A.unit == [Fraction(1), Fraction(0)]
