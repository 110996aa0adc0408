import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from invariants import ACCEPTANCE, entry_signature, phi_agreement
from oracles import brute_composition_dims
from strata import corpusio
from strata.cellsys import standard_module
from strata.chains import Claim, decide_qh_bounded
from strata.modules import composition_factors, hom_space, regular_module
from strata.repthy import cyclic_generator, lambda_irr

SEEDS = range(50)
SLOW = settings(deadline=None, suppress_health_check=[HealthCheck.too_slow])


@pytest.fixture(scope="module")
def reference():
    return {name: entry_signature(corpusio.builtin(name)) for name in corpusio.CATALOG}


@pytest.mark.parametrize("name", corpusio.CATALOG)
def test_basis_change_preserves_verdicts_for_fifty_seeds(name, reference):
    E = corpusio.builtin(name)
    for seed in SEEDS:
        assert entry_signature(corpusio.random_basis_change(E, seed)) == reference[name], seed


@pytest.mark.parametrize("name", [n for n in corpusio.CATALOG if n not in ACCEPTANCE])
def test_phi_image_equivalence_outside_acceptance_corpus(name):
    E = corpusio.builtin(name)
    for variant in [E] + [corpusio.random_basis_change(E, seed) for seed in SEEDS]:
        for S in variant.systems.values():
            for lam, (full_image, idempotent) in phi_agreement(S).items():
                assert full_image == idempotent, (variant.name, lam)


@SLOW
@given(st.sampled_from(ACCEPTANCE), st.integers(50, 10 ** 9))
def test_basis_change_equivariance_random_seeds(name, seed):
    E = corpusio.builtin(name)
    ref = entry_signature(E, certify=False)
    assert entry_signature(corpusio.random_basis_change(E, seed), certify=False) == ref


@SLOW
@given(st.sampled_from(["upper_triangular.2.Q", "matrix.2.GF3", "truncated_poly.2.GF2", "group_cyclic.3.Q"]),
       st.integers(0, 10 ** 6))
def test_qh_decision_is_basis_independent(name, seed):
    E = corpusio.builtin(name)
    V = corpusio.random_basis_change(E, seed)
    assert (decide_qh_bounded(V.algebra).claim is Claim.QUASI_HEREDITARY) == E.expected["qh"]


@pytest.mark.parametrize("name", ["matrix.2.GF3", "truncated_poly.2.GF2", "group_cyclic.2.GF2",
                                  "upper_triangular.3.GF2", "group_cyclic.3.GF2", "truncated_poly.3.GF3"])
def test_composition_series_against_exhaustive_search(name):
    A = corpusio.builtin(name).algebra
    M = regular_module(A)
    assert sorted(F.dim for F in composition_factors(M)) == brute_composition_dims(M)
    for S in corpusio.builtin(name).systems.values():
        for lam in S.order:
            delta = standard_module(S, lam).module
            assert sorted(F.dim for F in composition_factors(delta)) == brute_composition_dims(delta)


@pytest.mark.parametrize("name", ACCEPTANCE)
def test_homs_between_standards_follow_the_order(name):
    # whenever a cyclic generator exists, Hom(Delta(lam), Delta(mu)) != 0 forces lam <= mu
    for S in corpusio.builtin(name).systems.values():
        for lam in S.order:
            if cyclic_generator(S, lam) is None:
                continue
            for mu in S.order:
                if hom_space(standard_module(S, lam).module, standard_module(S, mu).module).dim:
                    assert S.poset.ge(mu, lam), (lam, mu)


@pytest.mark.parametrize("name", corpusio.CATALOG)
def test_full_divisible_systems_have_every_label_irreducible(name, reference):
    E = corpusio.builtin(name)
    for key, sig in reference[name]["systems"].items():
        if sig["divisible"] and all(sig["idempotent"].values()):
            assert lambda_irr(E.systems[key]) == list(E.systems[key].order)
