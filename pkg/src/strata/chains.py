"""Ideal chains, heredity and stratifying ideals, and replayable certificates."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field

from .algcore import (Algebra, Quotient, division_verdict, ideal_generated, is_ideal, local_verdict,
                      primitive_idempotent_coords, product_space, radical, settings, corner)
from .cellsys import (CellularDatum, Layer, chain_poset, gram_table, require_valid, verify_axioms,
                      layer_division_verdicts)
from .errors import InconclusiveError, InternalConsistencyError, StrataError
from .exactla import EchelonBasis, Matrix, Subspace
from .modules import ideal_module, is_projective
from .repthy import chain_ideals, fullness, lambda_irr


class Claim(str, enum.Enum):
    QUASI_HEREDITARY = "QuasiHereditary"
    STANDARDLY_STRATIFIED = "StandardlyStratified"
    CELLULAR_SYSTEM_VALID = "CellularSystemValid"
    NOT_QH_EXHAUSTED = "NotQH-exhausted"
    INCONCLUSIVE = "Inconclusive"
    CELLULAR_SYSTEM_INVALID = "CellularSystemInvalid"
    NOT_CERTIFIED = "NotCertified"

    @property
    def exit_code(self) -> int:
        if self in (Claim.QUASI_HEREDITARY, Claim.STANDARDLY_STRATIFIED, Claim.CELLULAR_SYSTEM_VALID):
            return 0
        if self is Claim.INCONCLUSIVE:
            return 2
        return 1


@dataclass
class IdealChain:
    """``0 = J_0 < J_1 < ... < J_m = A``; ``ideals`` omits ``J_0``.

    ``witnesses[k]`` (optional) is an element of ``A`` whose image in
    ``A / J_{k-1}`` is the idempotent generating ``J_k / J_{k-1}``.
    """

    ideals: list[Subspace]
    witnesses: list[list | None] | None = None

    @property
    def dims(self) -> list[int]:
        return [J.dim for J in self.ideals]

    def __len__(self):
        return len(self.ideals)


@dataclass
class Certificate:
    claim: Claim
    subject_hash: str
    field: str
    chain: IdealChain | None = None
    system_text: str | None = None
    notes: list[str] = dc_field(default_factory=list)
    search: dict = dc_field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return self.claim.exit_code


def subject_hash(A: Algebra) -> str:
    import hashlib
    from .corpusio import dump_algebra
    return hashlib.sha256(dump_algebra(A).encode()).hexdigest()


# ---------------------------------------------------------------- chains from systems


def chain_from_system(S: CellularDatum) -> IdealChain:
    """Partial sums of layers along the linear extension; each is checked to be an ideal."""
    require_valid(S)
    A = S.algebra
    ideals = chain_ideals(S)
    for lam, J in zip(S.order, ideals):
        if not is_ideal(A, J):
            raise InternalConsistencyError(f"partial sum through {lam} is not an ideal")
        if not J.contains_subspace(S.frame(lam).ge):
            raise InternalConsistencyError(f"partial sum through {lam} misses A^>={lam}")
    if ideals[-1].dim != A.dim:
        raise InternalConsistencyError("layers do not exhaust A")
    return IdealChain(ideals)


# ---------------------------------------------------------------- heredity and stratifying ideals


@dataclass
class IdealVerdict:
    """Checks on one ideal; ``ok`` is None when a bounded search was inconclusive."""

    ok: bool | None
    idempotent: list | None = None
    generated: bool = False
    radical_condition: bool | None = None
    projective: dict = dc_field(default_factory=dict)
    reason: str = ""


def _subset_idempotents(A: Algebra):
    prims = primitive_idempotent_coords(A)
    for size in range(1, len(prims) + 1):
        for combo in itertools.combinations(range(len(prims)), size):
            e = A.zero()
            for t in combo:
                e = A.add(e, prims[t])
            yield combo, e


def generating_idempotent(A: Algebra, J: Subspace) -> list | None:
    """An idempotent ``e`` (a sum of primitive ones) with ``A e A = J``."""
    for _, e in _subset_idempotents(A):
        if ideal_generated(A, [e]) == J:
            return e
    return None


def _check_generator(A: Algebra, J: Subspace, e) -> str:
    if A.mul(e, e) != list(e):
        return "witness is not idempotent"
    if ideal_generated(A, [e]) != J:
        return "witness does not generate the ideal"
    return ""


def verify_heredity_ideal(A: Algebra, J: Subspace, e=None) -> IdealVerdict:
    """``J = A e A``, ``J rad(A) J = 0`` and ``J`` projective as a left module."""
    if not is_ideal(A, J):
        return IdealVerdict(False, reason="not a two-sided ideal")
    try:
        if e is None:
            e = generating_idempotent(A, J)
            if e is None:
                return IdealVerdict(False, reason="not generated by an idempotent")
        else:
            msg = _check_generator(A, J, e)
            if msg:
                return IdealVerdict(False, e, reason=msg)
        N = radical(A)
        JN = product_space(A, J, N)
        rad_ok = product_space(A, JN, J).dim == 0
        if not rad_ok:
            return IdealVerdict(False, e, True, False, reason="J rad(A) J is nonzero")
        proj = is_projective(ideal_module(A, J, "left"))
    except InconclusiveError as exc:
        return IdealVerdict(None, e, reason=str(exc))
    v = IdealVerdict(proj, e, True, True, {"left": proj})
    if not proj:
        v.reason = "not projective as a left module"
    return v


def verify_stratifying_ideal(A: Algebra, J: Subspace, side: str = "left", e=None) -> IdealVerdict:
    """``J = A e A`` and ``J`` projective on the given side (``left``, ``right`` or ``both``)."""
    if not is_ideal(A, J):
        return IdealVerdict(False, reason="not a two-sided ideal")
    try:
        if e is None:
            e = generating_idempotent(A, J)
            if e is None:
                return IdealVerdict(False, reason="not generated by an idempotent")
        else:
            msg = _check_generator(A, J, e)
            if msg:
                return IdealVerdict(False, e, reason=msg)
        sides = ("left", "right") if side == "both" else (side,)
        proj = {s: is_projective(ideal_module(A, J, s)) for s in sides}
    except InconclusiveError as exc:
        return IdealVerdict(None, e, reason=str(exc))
    ok = all(proj.values())
    v = IdealVerdict(ok, e, True, None, proj)
    if not ok:
        v.reason = "not projective on the " + " and ".join(s for s, p in proj.items() if not p) + " side"
    return v


@dataclass
class ChainCheck:
    ok: bool | None
    failed_step: int | None
    reason: str
    chain: IdealChain
    verdicts: list[IdealVerdict]


def _walk_chain(A: Algebra, chain: IdealChain, check):
    """Run ``check(B, Jbar, ebar)`` on every step ``J_k / J_{k-1}`` inside ``A / J_{k-1}``."""
    prev = Subspace.zero(A.field, A.dim)
    witnesses = []
    verdicts = []
    if chain.ideals[-1].dim != A.dim:
        return ChainCheck(False, len(chain), "chain does not end at A", chain, verdicts)
    for k, J in enumerate(chain.ideals):
        if not J.contains_subspace(prev) or J.dim <= prev.dim:
            return ChainCheck(False, k + 1, "chain is not strictly increasing", chain, verdicts)
        if not is_ideal(A, J):
            return ChainCheck(False, k + 1, "step is not a two-sided ideal", chain, verdicts)
        Q = Quotient(A, prev)
        Jbar = Q.project_subspace(J)
        given = chain.witnesses[k] if chain.witnesses else None
        ebar = Q.project(given) if given is not None else None
        v = check(Q.algebra, Jbar, ebar)
        verdicts.append(v)
        if v.ok is not True:
            return ChainCheck(v.ok, k + 1, v.reason, chain, verdicts)
        witnesses.append(given if given is not None else Q.lift(v.idempotent))
        prev = J
    return ChainCheck(True, None, "", IdealChain(chain.ideals, witnesses), verdicts)


def verify_heredity_chain(A: Algebra, chain: IdealChain) -> ChainCheck:
    return _walk_chain(A, chain, verify_heredity_ideal)


def verify_stratifying_chain(A: Algebra, chain: IdealChain, side: str = "both") -> ChainCheck:
    return _walk_chain(A, chain, lambda B, J, e: verify_stratifying_ideal(B, J, side, e))


# ---------------------------------------------------------------- from a heredity chain to a system


def _greedy_module_basis(A: Algebra, space: Subspace, D_basis: list, side: str) -> list:
    """Greedy basis of ``space`` as a free right (``side='right'``) or left ``D``-module."""
    eb = EchelonBasis(A.field, A.dim)
    chosen = []
    for v in space.rows:
        orbit = [A.mul(v, x) if side == "right" else A.mul(x, v) for x in D_basis]
        trial = EchelonBasis(A.field, A.dim)
        trial.rows = [list(r) for r in eb.rows]
        trial.pivots = list(eb.pivots)
        if all(trial.add(w) for w in orbit):
            chosen.append(list(v))
            for w in orbit:
                eb.add(w)
        if len(eb) == space.dim:
            break
    if len(eb) != space.dim:
        raise InternalConsistencyError("space is not free over the corner algebra")
    return chosen


def _classes_in(B: Algebra, e) -> list[list]:
    """Representatives of the primitive idempotents below ``e``, one per isomorphism class."""
    from .algcore import pim_classes
    reps = []
    for cls in pim_classes(B):
        f = cls.idempotent
        # f is below e up to conjugacy when B f B lies in B e B
        if ideal_generated(B, [e]).contains_subspace(ideal_generated(B, [f])):
            reps.append(f)
    return reps


def system_from_heredity_chain(A: Algebra, chain: IdealChain, name: str = "") -> CellularDatum:
    """Build a divisible, full cellular system whose layers refine ``chain``.

    Each step ``J_k / J_{k-1} = B e B`` with ``B = A / J_{k-1}`` contributes one
    layer per isomorphism class of primitive idempotents in ``e``, with layer
    algebra ``f B f``, left basis of ``B f`` over ``f B f``, right basis of
    ``f B`` and map ``x -> a_i x b_j`` lifted to ``A`` through the section.
    The poset is the resulting total order, earliest step largest.
    """
    check = verify_heredity_chain(A, chain)
    if not check.ok:
        raise StrataError(f"not a heredity chain: step {check.failed_step}: {check.reason}")
    ideals = check.chain.ideals
    labels, layers = [], {}
    prev = Subspace.zero(A.field, A.dim)
    for k, (J, w) in enumerate(zip(ideals, check.chain.witnesses)):
        Q = Quotient(A, prev)
        B = Q.algebra
        ebar = Q.project(w)
        reps = _classes_in(B, ebar)
        current = Subspace.zero(B.field, B.dim)
        for r, f in enumerate(reps):
            D, Demb = corner(B, f)
            verdict = division_verdict(D)
            if verdict.status != "Division":
                raise StrataError(f"step {k + 1}: corner algebra is not certified to be a division algebra "
                                  f"({verdict.status})")
            D_basis = [list(v) for v in Demb.rows]
            Bf = B.subspace([B.mul(B.basis_vector(i), f) for i in range(B.dim)])
            fB = B.subspace([B.mul(f, B.basis_vector(i)) for i in range(B.dim)])
            left = _greedy_module_basis(B, Bf, D_basis, "right")
            right = _greedy_module_basis(B, fB, D_basis, "left")
            maps = {}
            for i, a in enumerate(left):
                for j, b in enumerate(right):
                    cols = [Q.lift(B.mul3(a, x, b)) for x in D_basis]
                    maps[(i, j)] = Matrix.from_columns(A.field, cols, A.dim)
            lam = f"s{k + 1}" if len(reps) == 1 else f"s{k + 1}.{r + 1}"
            labels.append(lam)
            layers[lam] = Layer(lam, D, len(left), len(right), maps)
            current = current.sum(ideal_generated(B, [f]))
        if current != Q.project_subspace(J):
            raise InternalConsistencyError(f"step {k + 1}: layers do not fill the step")
        prev = J
    S = CellularDatum(A, chain_poset(labels), layers, name)
    rep = verify_axioms(S)
    if not rep.ok:
        raise InternalConsistencyError("constructed datum fails the axioms: " + rep.report.failures()[0].name)
    return S


# ---------------------------------------------------------------- certificates from systems


def _invertible(D: Algebra, z) -> list | None:
    from .exactla import solve
    R = D.right_matrix(z)
    if R.rank() != D.dim:
        return None
    return solve(D.left_matrix(z), D.unit)


def layer_idempotents(S: CellularDatum) -> dict[str, list] | tuple[str, str]:
    """``c_{i,j}(f(j,i)^{-1})`` for an invertible gram entry on every layer, or ``(label, reason)``."""
    out = {}
    for lam in S.order:
        L = S.layers[lam]
        G = gram_table(S, lam)
        found = None
        for i in range(L.I):
            for j in range(L.J):
                inv = _invertible(L.D, G[(j, i)])
                if inv is not None:
                    found = S.c(lam, i, j, inv)
                    break
            if found is not None:
                break
        if found is None:
            return (lam, "no invertible gram entry")
        out[lam] = found
    return out


def certify_qh_from_system(S: CellularDatum) -> Certificate:
    A = S.algebra
    cert = Certificate(Claim.NOT_CERTIFIED, subject_hash(A), str(A.field))
    rep = verify_axioms(S)
    if not rep.ok:
        cert.claim = Claim.CELLULAR_SYSTEM_INVALID
        cert.notes.append("axioms fail: " + rep.report.failures()[0].name)
        return cert
    for lam, v in layer_division_verdicts(S).items():
        if v.status == "Inconclusive":
            cert.claim = Claim.INCONCLUSIVE
            cert.notes.append(f"D({lam}): division test inconclusive")
            return cert
        if v.status != "Division":
            cert.notes.append(f"D({lam}) is not a division algebra")
            return cert
    for lam in S.order:
        fv = fullness(S, lam)
        if not fv.full:
            irr = lambda_irr(S)
            cert.notes.append(f"layer {lam} is not full (pairing image dim {fv.phi_image_dim} of {fv.d}); "
                              f"irreducible labels: {' '.join(irr)}")
            return cert
    chain = chain_from_system(S)
    idems = layer_idempotents(S)
    if isinstance(idems, tuple):
        raise InternalConsistencyError(f"full divisible layer {idems[0]} has no invertible gram entry")
    chain.witnesses = [idems[lam] for lam in S.order]
    check = verify_heredity_chain(A, chain)
    if check.ok is None:
        cert.claim = Claim.INCONCLUSIVE
        cert.notes.append(f"step {check.failed_step}: {check.reason}")
        return cert
    if not check.ok:
        raise InternalConsistencyError(f"full divisible system gave a non-heredity step {check.failed_step}: "
                                       f"{check.reason}")
    cert.claim = Claim.QUASI_HEREDITARY
    cert.chain = check.chain
    cert.notes.append("chain of layer partial sums; witnesses c(f^-1) from invertible gram entries")
    return cert


def stratification_from_local_system(S: CellularDatum) -> Certificate:
    """Standard stratification from invertible gram entries, checked on both sides."""
    A = S.algebra
    cert = Certificate(Claim.NOT_CERTIFIED, subject_hash(A), str(A.field))
    rep = verify_axioms(S)
    if not rep.ok:
        cert.claim = Claim.CELLULAR_SYSTEM_INVALID
        cert.notes.append("axioms fail: " + rep.report.failures()[0].name)
        return cert
    idems = layer_idempotents(S)
    local_full = True
    for lam in S.order:
        lv = local_verdict(S.layers[lam].D)
        if lv.status != "Local" or not fullness(S, lam).full:
            local_full = False
    if isinstance(idems, tuple):
        if local_full:
            raise InternalConsistencyError(f"local full layer {idems[0]} has no invertible gram entry")
        cert.notes.append(f"layer {idems[0]}: {idems[1]}")
        return cert
    chain = chain_from_system(S)
    chain.witnesses = [idems[lam] for lam in S.order]
    check = verify_stratifying_chain(A, chain, "both")
    if check.ok is None:
        cert.claim = Claim.INCONCLUSIVE
        cert.notes.append(f"step {check.failed_step}: {check.reason}")
        return cert
    if not check.ok:
        raise InternalConsistencyError(f"invertible gram entries gave a non-stratifying step {check.failed_step}: "
                                       f"{check.reason}")
    cert.claim = Claim.STANDARDLY_STRATIFIED
    cert.chain = check.chain
    cert.notes.append("route: invertible gram entry on every layer"
                      + ("; every layer algebra is local and every layer full" if local_full else ""))
    return cert


def certify_system(S: CellularDatum) -> Certificate:
    A = S.algebra
    rep = verify_axioms(S)
    claim = Claim.CELLULAR_SYSTEM_VALID if rep.ok else Claim.CELLULAR_SYSTEM_INVALID
    cert = Certificate(claim, subject_hash(A), str(A.field))
    for c in rep.report.failures():
        cert.notes.append(f"{c.name}: {c.detail}".rstrip(": "))
    return cert


# ---------------------------------------------------------------- bounded search


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def decide_qh_bounded(A: Algebra, budget: int | None = None) -> Certificate:
    """Depth-first search for a heredity chain through ideals ``B e B``.

    ``e`` ranges over nonempty sums of a fixed complete set of primitive
    idempotents, projected to each quotient.  Candidates are tried in order of
    subset size and then index, so the first chain found is deterministic.
    """
    if budget is None:
        budget = settings().search_budget
    cert = Certificate(Claim.INCONCLUSIVE, subject_hash(A), str(A.field))
    try:
        prims = primitive_idempotent_coords(A)
    except InconclusiveError as exc:
        cert.notes.append(f"primitive idempotents: {exc}")
        return cert
    spent = _Budget(budget)
    failed: set = set()
    inconclusive = [False]

    def dfs(prev: Subspace, trail: list):
        if prev.dim == A.dim:
            return trail
        key = tuple(map(tuple, prev.rows))
        if key in failed:
            return None
        Q = Quotient(A, prev)
        B = Q.algebra
        alive = [t for t, e in enumerate(prims) if any(Q.project(e))]
        seen = set()
        for size in range(1, len(alive) + 1):
            for combo in itertools.combinations(alive, size):
                e = A.zero()
                for t in combo:
                    e = A.add(e, prims[t])
                ebar = Q.project(e)
                Jbar = ideal_generated(B, [ebar])
                jkey = tuple(map(tuple, Jbar.rows))
                if jkey in seen:
                    continue
                seen.add(jkey)
                if not spent.spend():
                    raise _OutOfBudget()
                v = verify_heredity_ideal(B, Jbar, ebar)
                if v.ok is None:
                    inconclusive[0] = True
                    continue
                if v.ok:
                    J = Q.preimage(Jbar)
                    found = dfs(J, trail + [(J, e)])
                    if found is not None:
                        return found
        failed.add(key)
        return None

    try:
        found = dfs(Subspace.zero(A.field, A.dim), [])
    except _OutOfBudget:
        cert.notes.append(f"budget of {budget} heredity checks exhausted")
        cert.search = {"checks": spent.used - 1, "budget": budget}
        return cert
    cert.search = {"checks": spent.used, "budget": budget, "primitive_idempotents": len(prims)}
    if found is not None:
        cert.claim = Claim.QUASI_HEREDITARY
        cert.chain = IdealChain([J for J, _ in found], [e for _, e in found])
        cert.notes.append(f"heredity chain found after {spent.used} checks")
        return cert
    if inconclusive[0]:
        cert.notes.append("some heredity checks were inconclusive")
        return cert
    cert.claim = Claim.NOT_QH_EXHAUSTED
    cert.notes.append(f"no heredity chain among ideals generated by sums of {len(prims)} primitive idempotents "
                      f"({spent.used} checks)")
    return cert


class _OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------- replay


@dataclass
class ReplayResult:
    ok: bool
    claim: Claim
    messages: list[str]


def replay(cert: Certificate, A: Algebra) -> ReplayResult:
    """Re-verify a certificate against an algebra using only the certificate's contents."""
    msgs = []
    if subject_hash(A) != cert.subject_hash:
        return ReplayResult(False, cert.claim, ["subject hash does not match the algebra"])
    claim = cert.claim
    if claim in (Claim.QUASI_HEREDITARY, Claim.STANDARDLY_STRATIFIED):
        if cert.chain is None or not cert.chain.witnesses:
            return ReplayResult(False, claim, ["certificate carries no chain"])
        if claim is Claim.QUASI_HEREDITARY:
            chk = verify_heredity_chain(A, cert.chain)
        else:
            chk = verify_stratifying_chain(A, cert.chain, "both")
        if chk.ok:
            msgs.append(f"{len(cert.chain)} steps re-verified, dims {' '.join(map(str, cert.chain.dims))}")
            return ReplayResult(True, claim, msgs)
        return ReplayResult(False, claim, [f"step {chk.failed_step} fails: {chk.reason}"])
    if claim in (Claim.CELLULAR_SYSTEM_VALID, Claim.CELLULAR_SYSTEM_INVALID, Claim.NOT_CERTIFIED):
        if cert.system_text is None:
            return ReplayResult(False, claim, ["certificate carries no system"])
        from .corpusio import parse_system
        S = parse_system(cert.system_text, A)
        if claim is Claim.NOT_CERTIFIED:
            kind = cert.search.get("procedure", "qh")
            again = stratification_from_local_system(S) if kind == "stratify" else certify_qh_from_system(S)
        else:
            again = certify_system(S)
        ok = again.claim is claim
        msgs.append(f"recomputed claim {again.claim.value}")
        return ReplayResult(ok, claim, msgs)
    if claim is Claim.NOT_QH_EXHAUSTED:
        again = decide_qh_bounded(A, cert.search.get("budget"))
        ok = again.claim is Claim.NOT_QH_EXHAUSTED and again.search.get("checks") == cert.search.get("checks")
        msgs.append(f"search rerun: {again.claim.value} after {again.search.get('checks')} checks")
        return ReplayResult(ok, claim, msgs)
    msgs.append("inconclusive certificates carry no evidence to check")
    return ReplayResult(True, claim, msgs)
