import pytest

from oracles import group_algebra_cyclic, truncated
from strata import corpusio
from strata.algcore import pim_classes
from strata.cellsys import layer_division_verdicts, standard_module, verify_axioms
from strata.chains import (Certificate, Claim, certify_qh_from_system, decide_qh_bounded,
                           stratification_from_local_system)
from strata.errors import ParseError
from strata.exactla import GF, QQ, Matrix
from strata.repthy import fullness, lambda_irr


@pytest.mark.parametrize("name", corpusio.CATALOG)
def test_algebra_round_trip(name):
    A = corpusio.builtin(name).algebra
    text = corpusio.dump_algebra(A)
    again = corpusio.parse_algebra(text)
    assert again.products == A.products and again.unit == A.unit
    assert corpusio.dump_algebra(again) == text


@pytest.mark.parametrize("name", corpusio.CATALOG)
def test_system_round_trip(name):
    E = corpusio.builtin(name)
    for S in list(E.systems.values()) + list(E.broken.values()):
        text = corpusio.dump_system(S)
        again = corpusio.parse_system(text, E.algebra)
        assert corpusio.dump_system(again) == text
        assert list(again.order) == list(S.order)


@pytest.mark.parametrize("name", corpusio.CATALOG)
def test_expected_maps(name):
    E = corpusio.builtin(name)
    assert E.algebra.dim == E.expected["dim"]
    assert len(pim_classes(E.algebra)) == E.expected["simples"]
    for key, S in E.systems.items():
        exp = E.expected["systems"][key]
        assert verify_axioms(S).ok
        assert {lam: (L.I, L.J, L.d) for lam, L in S.layers.items()} == exp["layers"]
        divisible = all(v.status == "Division" for v in layer_division_verdicts(S).values())
        assert divisible == exp["divisible"]
        if divisible:
            assert lambda_irr(S) == exp["irr"]
        assert all(fullness(S, lam).full for lam in S.order) == exp["full"]
        qh = certify_qh_from_system(S).claim is Claim.QUASI_HEREDITARY
        assert qh == exp["qh_certified"]
        strat = stratification_from_local_system(S).claim is Claim.STANDARDLY_STRATIFIED
        assert strat == exp["stratified_certified"]


@pytest.mark.parametrize("name", [n for n in corpusio.CATALOG if not n.startswith("temperley_lieb.4")])
def test_expected_qh_matches_search(name):
    E = corpusio.builtin(name)
    claim = decide_qh_bounded(E.algebra).claim
    assert claim is (Claim.QUASI_HEREDITARY if E.expected["qh"] else Claim.NOT_QH_EXHAUSTED)


def test_corpus_algebras_match_independent_builders():
    assert corpusio.builtin("truncated_poly.2.GF2").algebra.products == truncated(2, GF(2)).products
    assert corpusio.builtin("group_cyclic.3.Q").algebra.products == group_algebra_cyclic(3, QQ).products


def test_group_cyclic_simples():
    # x^2 - 1 = (x + 1)^2 over GF(2); x^3 - 1 = (x - 1)(x^2 + x + 1) over Q
    assert corpusio.builtin("group_cyclic.2.GF2").expected["simples"] == 1
    assert corpusio.builtin("group_cyclic.3.Q").expected["simples"] == 2


def test_temperley_lieb_dimensions():
    # Catalan numbers
    assert corpusio.builtin("temperley_lieb.3.2.Q").algebra.dim == 5
    assert corpusio.builtin("temperley_lieb.4.0.Q").algebra.dim == 14
    E = corpusio.builtin("temperley_lieb.4.0.Q")
    assert E.expected["systems"]["diagram"]["irr"] == ["t2", "t4"]


def test_tl3_gram():
    S = corpusio.builtin("temperley_lieb.3.2.Q").systems["diagram"]
    from strata.cellsys import gram_table
    G = gram_table(S, "t1")
    assert [[G[(j, i)][0] for i in range(2)] for j in range(2)] == [[2, 1], [1, 2]]
    assert standard_module(S, "t1").dim == 2


def test_parse_names():
    assert corpusio.parse_name("matrix.2.GF3") == ("matrix", (2, GF(3)))
    for bad in ("nope.2.Q", "matrix.2", "matrix.x.Q", "matrix.9.Q", "matrix.2.GF4", "temperley_lieb.3.Q"):
        with pytest.raises(ValueError):
            corpusio.parse_name(bad)


def test_builtin_accepts_names_outside_catalog():
    E = corpusio.builtin("truncated_poly.3.GF3")
    assert E.algebra.dim == 3 and verify_axioms(E.systems["divisible"]).ok


ALGEBRA_T = """algebra v1
field Q
dim 1
unit 1
sc 0 0 0 1
"""


def test_parse_algebra_minimal():
    A = corpusio.parse_algebra(ALGEBRA_T)
    assert A.dim == 1 and A.products == [[[1]]]


@pytest.mark.parametrize("text,line,col", [
    ("algebra v2\n", 1, 9),
    ("algebra v1\nfield R\n", 2, 7),
    ("algebra v1\nfield Q\ndim x\n", 3, 5),
    ("algebra v1\nfield Q\ndim 1\nunit 1 2\n", 4, 8),
    ("algebra v1\nfield Q\ndim 1\nunit 1\nsc 0 0 5 1\n", 5, 8),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        corpusio.parse_algebra(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"line {line}, column {col}:")


def test_parse_algebra_rejects_non_associative():
    # x * x = 1 and x * 1 = 0 cannot both hold with unit 1
    text = "algebra v1\nfield Q\ndim 2\nunit 1 0\nsc 0 0 0 1\nsc 1 1 0 1\n"
    from strata.errors import AxiomViolation
    with pytest.raises(AxiomViolation):
        corpusio.parse_algebra(text)


def test_parse_system_truncated_is_parse_error():
    E = corpusio.builtin("upper_triangular.2.Q")
    text = corpusio.dump_system(E.systems["hand"])
    cut = "\n".join(text.splitlines()[:-1]) + "\n"
    with pytest.raises(ParseError):
        corpusio.parse_system(cut, E.algebra)


def test_chain_round_trip():
    E = corpusio.builtin("upper_triangular.3.Q")
    cert = decide_qh_bounded(E.algebra)
    text = corpusio.dump_chain(E.algebra, cert.chain)
    again = corpusio.parse_chain(text, E.algebra)
    assert again.ideals == cert.chain.ideals and again.witnesses == cert.chain.witnesses
    assert corpusio.dump_chain(E.algebra, again) == text


def test_certificate_round_trip():
    E = corpusio.builtin("truncated_poly.2.GF2")
    cert = stratification_from_local_system(E.systems["local"])
    cert.system_text = corpusio.dump_system(E.systems["local"])
    text = corpusio.dump_certificate(cert, E.algebra)
    again = corpusio.parse_certificate(text)
    assert isinstance(again, Certificate)
    assert again.claim is cert.claim and again.subject_hash == cert.subject_hash
    assert again.chain.dims == cert.chain.dims
    assert corpusio.dump_certificate(again, E.algebra) == text


def test_change_basis_identity_and_inverse():
    E = corpusio.builtin("upper_triangular.2.Q")
    I = Matrix.identity(QQ, 3)
    A2, P_inv = corpusio.change_basis(E.algebra, I)
    assert A2.products == E.algebra.products and P_inv == I
    with pytest.raises(ValueError):
        corpusio.change_basis(E.algebra, Matrix.zeros(QQ, 3, 3))


def test_random_basis_change_deterministic():
    E = corpusio.builtin("matrix.2.GF3")
    a = corpusio.random_basis_change(E, 7)
    b = corpusio.random_basis_change(E, 7)
    assert a.name == "matrix.2.GF3~7"
    assert a.algebra.products == b.algebra.products
    assert corpusio.dump_system(a.systems["matrix-units"]) == corpusio.dump_system(b.systems["matrix-units"])


def test_emit_writes_loadable_files(tmp_path):
    E = corpusio.builtin("upper_triangular.2.Q")
    paths = corpusio.emit(E, tmp_path)
    names = sorted(p.name for p in paths)
    assert names == sorted(["algebra.txt", "system-hand.txt", "system-heredity.txt", "system-collision.txt",
                            "system-wrong_order.txt"])
    A = corpusio.load_algebra(tmp_path / "algebra.txt")
    S = corpusio.load_system(tmp_path / "system-hand.txt", A)
    assert verify_axioms(S).ok
    assert not verify_axioms(corpusio.load_system(tmp_path / "system-collision.txt", A)).ok
