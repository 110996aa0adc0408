"""Basis-independent summaries of corpus entries, shared by the property and acceptance tests."""

from __future__ import annotations

from strata.algcore import pim_classes
from strata.cellsys import (layer_division_verdicts, layer_is_idempotent, m_iso, phi, standard_module,
                            verify_axioms)
from strata.chains import certify_qh_from_system, stratification_from_local_system
from strata.repthy import lambda_irr

ACCEPTANCE = (
    "upper_triangular.2.Q",
    "upper_triangular.3.Q",
    "matrix.2.Q",
    "matrix.2.GF3",
    "truncated_poly.2.Q",
    "truncated_poly.2.GF2",
    "temperley_lieb.3.2.Q",
)


def phi_agreement(S) -> dict:
    """Per label: (image of phi is all of D, layer is an idempotent ideal)."""
    return {lam: (phi(S, lam).image.dim == S.layers[lam].d, layer_is_idempotent(S, lam)) for lam in S.order}


def system_signature(S, certify: bool = True) -> dict:
    sig = {
        "valid": verify_axioms(S).ok,
        "layers": {lam: (L.I, L.J, L.d) for lam, L in S.layers.items()},
        "delta": {lam: standard_module(S, lam).dim for lam in S.order},
        "delta_op": {lam: standard_module(S, lam, "right").dim for lam in S.order},
        "image": {lam: phi(S, lam).image.dim for lam in S.order},
        "bijective": {lam: m_iso(S, lam).bijective for lam in S.order},
        "idempotent": {lam: layer_is_idempotent(S, lam) for lam in S.order},
    }
    divisible = all(v.status == "Division" for v in layer_division_verdicts(S).values())
    sig["divisible"] = divisible
    sig["irr"] = lambda_irr(S) if divisible else None
    if certify:
        sig["qh"] = certify_qh_from_system(S).claim
        sig["stratified"] = stratification_from_local_system(S).claim
    return sig


def entry_signature(entry, certify: bool = True) -> dict:
    return {
        "simples": len(pim_classes(entry.algebra)),
        "systems": {key: system_signature(S, certify) for key, S in entry.systems.items()},
        "broken": {key: verify_axioms(S).ok for key, S in entry.broken.items()},
    }
