"""The eleven acceptance criteria; each prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import io
import sys
import tempfile
import time
import traceback
from pathlib import Path

import pytest

from invariants import ACCEPTANCE, phi_agreement
from oracles import brute_composition_dims, brute_radical
from strata import corpusio
from strata.cellsys import (check_associativity, layer_division_verdicts, m_iso, standard_module,
                            verify_axioms)
from strata.chains import (Claim, certify_qh_from_system, chain_from_system, decide_qh_bounded,
                           stratification_from_local_system, system_from_heredity_chain,
                           verify_heredity_chain, verify_stratifying_chain)
from strata.cli import run
from strata.exactla import span
from strata.modules import composition_factors, is_isomorphic, module_radical
from strata.repthy import (classify_simples, comp_multiplicity, delta_filtration, lambda_irr, projective_cover,
                           rad_delta, simple, standard_dims)

CRITERIA = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return register


def entries():
    return [corpusio.builtin(name) for name in ACCEPTANCE]


def systems():
    return [(E, key, S) for E in entries() for key, S in E.systems.items()]


def divisible_systems():
    return [(E, key, S) for E, key, S in systems()
            if all(v.status == "Division" for v in layer_division_verdicts(S).values())]


@criterion(1, "axiom suite on the corpus; broken variants fail with named witnesses")
def check_axiom_suite():
    for E, key, S in systems():
        assert verify_axioms(S).ok, (E.name, key)
    E = corpusio.builtin("upper_triangular.2.Q")
    assert sorted(E.broken) == ["collision", "wrong_order"]
    for key, S in E.broken.items():
        rep = verify_axioms(S)
        assert not rep.ok
        assert rep.witnesses and rep.witnesses[0] == E.expected["broken"][key], (key, rep.witnesses)
        assert any(c.witness is not None for c in rep.report.failures())


@criterion(2, "dimension bookkeeping of the algebra and the standard modules")
def check_dimensions():
    for E, key, S in systems():
        assert E.algebra.dim == sum(L.I * L.J * L.d for L in S.layers.values()), (E.name, key)
        for lam, L in S.layers.items():
            assert standard_module(S, lam).dim == L.I * L.d
            assert standard_module(S, lam, "right").dim == L.J * L.d


@criterion(3, "m_lambda bijective; each layer is |J| blocks of Delta on the left")
def check_m_iso():
    for E, key, S in systems():
        for lam in S.order:
            r = m_iso(S, lam)
            assert r.bijective and r.left_blocks and r.ok, (E.name, key, lam)


@criterion(4, "associativity of the layer product against the pairing on all generator triples")
def check_associativity_identity():
    for E, key, S in systems():
        for lam in S.order:
            assert check_associativity(S, lam), (E.name, key, lam)


@criterion(5, "phi image equals D exactly when the layer is idempotent, corpus plus 50 basis changes each")
def check_phi_equivalence():
    for E in entries():
        for variant in [E] + [corpusio.random_basis_change(E, seed) for seed in range(50)]:
            for key, S in variant.systems.items():
                for lam, (full_image, idempotent) in phi_agreement(S).items():
                    if full_image != idempotent:
                        raise AssertionError(f"disagreement on {variant.name} {key} {lam}")


@criterion(6, "pairing radical, simples counts and decomposition numbers of standard modules")
def check_simples():
    for E, key, S in divisible_systems():
        for lam in lambda_irr(S):
            delta = standard_module(S, lam).module
            assert rad_delta(S, lam) == module_radical(delta), (E.name, key, lam)
            if S.field.characteristic:
                basis = [[S.field.one if k == t else S.field.zero for k in range(delta.dim)]
                         for t in range(delta.dim)]
                vecs = [delta.apply(r, v) for r in brute_radical(S.algebra) for v in basis]
                assert rad_delta(S, lam) == span(S.field, delta.dim, vecs)
    counts = {"upper_triangular.2.Q": 2, "upper_triangular.3.Q": 3, "matrix.2.Q": 1, "matrix.2.GF3": 1,
              "truncated_poly.2.Q": 1, "truncated_poly.2.GF2": 1}
    for E, key, S in divisible_systems():
        if E.name in counts:
            assert len(classify_simples(S)) == counts[E.name], (E.name, key)
    for E, key, S in divisible_systems():
        irr = lambda_irr(S)
        for mu in S.order:
            delta = standard_module(S, mu).module
            assert delta.dim <= 8
            factors = composition_factors(delta)
            if S.field.characteristic:
                assert sorted(F.dim for F in factors) == brute_composition_dims(delta)
            for lam in irr:
                m = comp_multiplicity(S, delta, lam)
                explicit = sum(1 for F in factors if is_isomorphic(F, simple(S, lam)))
                assert m == explicit, (E.name, key, lam, mu)
                if lam == mu:
                    assert m == 1
                if not S.poset.ge(mu, lam):
                    assert m == 0 and explicit == 0, (E.name, key, lam, mu)


@criterion(7, "Delta-filtrations of the projective covers")
def check_filtrations():
    for E, key, S in divisible_systems():
        for lam in lambda_irr(S):
            P = projective_cover(S, lam)
            flt = delta_filtration(S, P)
            assert flt.multiplicity(lam) == 1, (E.name, key, lam)
            assert all(S.poset.ge(mu, lam) for mu, m in flt.sections if m), (E.name, key, lam)
            dims = standard_dims(S)
            assert sum(m * dims[mu] for mu, m in flt.sections) == P.dim
    S = corpusio.builtin("upper_triangular.3.Q").systems["hand"]
    assert sum(m for lam in S.order for _, m in delta_filtration(S, projective_cover(S, lam)).sections) == 6


@criterion(8, "heredity chain to system to certificate round trip")
def check_round_trip():
    for name in ("upper_triangular.2.Q", "upper_triangular.3.Q", "matrix.2.GF3"):
        A = corpusio.builtin(name).algebra
        found = decide_qh_bounded(A)
        assert found.claim is Claim.QUASI_HEREDITARY
        assert verify_heredity_chain(A, found.chain).ok
        S = system_from_heredity_chain(A, found.chain)
        assert verify_axioms(S).ok
        cert = certify_qh_from_system(S)
        assert cert.claim is Claim.QUASI_HEREDITARY, name
        assert cert.chain.dims == found.chain.dims == chain_from_system(S).dims


@criterion(9, "dual numbers are standardly stratified on both sides but not quasi-hereditary")
def check_stratification():
    for name in ("truncated_poly.2.Q", "truncated_poly.2.GF2"):
        E = corpusio.builtin(name)
        cert = stratification_from_local_system(E.systems["local"])
        assert cert.claim is Claim.STANDARDLY_STRATIFIED, name
        assert verify_stratifying_chain(E.algebra, cert.chain, "both").ok
        assert decide_qh_bounded(E.algebra).claim is Claim.NOT_QH_EXHAUSTED


@criterion(10, "divisible but not full system: Lambda_irr is {l2} and no QH certificate")
def check_negative_control():
    for name in ("truncated_poly.2.Q", "truncated_poly.2.GF2"):
        S = corpusio.builtin(name).systems["divisible"]
        irr = lambda_irr(S)
        assert irr == ["l2"] and set(irr) < set(S.order)
        assert certify_qh_from_system(S).claim is not Claim.QUASI_HEREDITARY


def _call(argv, out_path=None) -> int:
    out = io.StringIO()
    code = run([str(a) for a in argv], out, sys.stderr)
    if out_path is not None:
        out_path.write_text(out.getvalue())
    return code


def _cli_run(root: Path) -> dict[str, bytes]:
    """Every certificate-emitting command on the emitted corpus; returns output bytes by path."""
    outputs = {}
    for name in ACCEPTANCE:
        d = root / name
        assert _call(["corpus", "emit", name, d]) == 0
        alg = str(d / "algebra.txt")
        jobs = [("decide-qh", ["decide-qh", "-a", alg])]
        for key in corpusio.builtin(name).systems:
            sysf = str(d / f"system-{key}.txt")
            jobs.append((f"verify-{key}", ["verify-system", "-a", alg, "-s", sysf]))
            jobs.append((f"stratify-{key}", ["stratify", "-a", alg, "-s", sysf]))
        for tag, argv in jobs:
            cert = d / f"{tag}.cert"
            code = _call(argv + ["--cert", cert], d / f"{tag}.out")
            assert code == corpusio.load_certificate(cert).claim.exit_code, (name, tag)
        qh = corpusio.load_certificate(d / "decide-qh.cert")
        if qh.claim is Claim.QUASI_HEREDITARY:
            A = corpusio.load_algebra(alg)
            corpusio.save_chain(A, qh.chain, d / "chain.txt")
            assert _call(["from-chain", "-a", alg, "-c", d / "chain.txt", "-o", d / "from-chain.sys",
                          "--cert", d / "from-chain.cert"], d / "from-chain.out") == 0
    for p in sorted(root.rglob("*")):
        if p.is_file():
            outputs[str(p.relative_to(root))] = p.read_bytes()
    return outputs


@criterion(11, "certificates replay from file; two runs are byte-identical")
def check_replay_and_determinism():
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        first = _cli_run(Path(a))
        second = _cli_run(Path(b))
        assert first.keys() == second.keys()
        differing = [k for k in first if first[k] != second[k]]
        assert not differing, differing
        certs = sorted(Path(a).rglob("*.cert"))
        assert len(certs) > 2 * len(ACCEPTANCE)
        for cert in certs:
            alg = cert.parent / "algebra.txt"
            assert _call(["replay", "-t", cert, "-a", alg], cert.with_suffix(".replay")) == 0, cert


def _report(number) -> bool:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    ok = False
    try:
        fn()
        ok = True
    finally:
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - start:.1f}s) {title}")
    return ok


@pytest.mark.parametrize("number", range(1, 12))
def test_acceptance_criterion(number, capsys):
    with capsys.disabled():
        print()
        _report(number)


if __name__ == "__main__":
    failed = 0
    for n in CRITERIA:
        try:
            _report(n)
        except Exception:
            traceback.print_exc()
            failed += 1
    sys.exit(1 if failed else 0)
