"""Representation theory read off a cellular system.

Simple modules come from the radical of the pairing on standard modules,
projective covers from primitive idempotents, and standard filtrations from
the chain of layer ideals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algcore import Algebra, pim_classes
from .cellsys import (CellularDatum, Report, layer_is_idempotent, phi, require_divisible, require_valid,
                      standard_module)
from .errors import InternalConsistencyError
from .exactla import EchelonBasis, Matrix, Subspace, kernel_basis, solve
from .modules import AModule, composition_factors, find_injection, hom_space, ideal_module, module_radical

__all__ = [
    "AModule", "hom_space", "module_radical", "FullnessVerdict", "fullness", "lambda_irr", "rad_delta",
    "simple", "classify_simples", "comp_multiplicity", "projective_cover", "projective_idempotent",
    "DeltaFiltration", "delta_filtration", "hom_delta_check", "cyclic_generator",
]


@dataclass
class FullnessVerdict:
    """Both characterisations of a full layer, computed independently."""

    label: str
    full: bool
    phi_image_dim: int
    d: int
    layer_idempotent: bool


def fullness(S: CellularDatum, lam: str) -> FullnessVerdict:
    P = phi(S, lam)
    d = S.layers[lam].d
    by_phi = P.image.dim == d
    by_ideal = layer_is_idempotent(S, lam)
    if by_phi != by_ideal:
        raise InternalConsistencyError(f"layer {lam}: pairing image and layer idempotence disagree")
    return FullnessVerdict(lam, by_phi, P.image.dim, d, by_ideal)


def lambda_irr(S: CellularDatum) -> list[str]:
    """Labels whose pairing is nonzero, in linear-extension order."""
    require_divisible(S)
    return [lam for lam in S.order if not phi(S, lam).is_zero()]


def _pairing_matrix(S: CellularDatum, lam: str) -> Matrix:
    """Rows: ``b_j(d_k)`` and a ``D``-coordinate; columns: basis of ``Delta(lam)``."""
    L = S.layers[lam]
    D = L.D
    P = phi(S, lam)
    rows = []
    for j in range(L.J):
        for k in range(L.d):
            block = [[] for _ in range(L.d)]
            for i in range(L.I):
                for l in range(L.d):
                    val = P.value(j, D.basis_vector(k), i, D.basis_vector(l))
                    for t in range(L.d):
                        block[t].append(val[t])
            rows.extend(block)
    return Matrix(S.field, rows, L.I * L.d)


def rad_delta(S: CellularDatum, lam: str) -> Subspace:
    """Vectors of ``Delta(lam)`` killed by the pairing; equals ``rad(A) Delta(lam)`` on irreducible labels."""
    N = kernel_basis(_pairing_matrix(S, lam))
    if not phi(S, lam).is_zero():
        require_divisible(S)
        R = module_radical(standard_module(S, lam).module)
        if R != N:
            raise InternalConsistencyError(f"layer {lam}: pairing radical differs from rad(A) Delta")
    return N


def simple(S: CellularDatum, lam: str) -> AModule:
    """``L(lam) = Delta(lam) / rad Delta(lam)`` for an irreducible label."""
    key = ("simple", lam)
    if key in S._cache:
        return S._cache[key]
    if lam not in lambda_irr(S):
        raise ValueError(f"{lam} is not an irreducible label: its pairing vanishes")
    delta = standard_module(S, lam).module
    L = delta.quotient(rad_delta(S, lam), f"L({lam})")
    for r in range(L.dim):
        e = [S.field.zero] * L.dim
        e[r] = S.field.one
        if L.spin([e]).dim != L.dim:
            raise InternalConsistencyError(f"L({lam}) has a proper submodule")
    if module_radical(L).dim:
        raise InternalConsistencyError(f"rad(A) does not annihilate L({lam})")
    S._cache[key] = L
    return L


def end_algebra(M: AModule) -> Algebra:
    """``End_A(M)`` as an algebra under composition ``(f*g)(v) = f(g(v))``."""
    H = hom_space(M, M)
    n = M.dim
    vecs = [h.flat() for h in H.basis]
    sub = Subspace(M.field, n * n, vecs)
    prods = []
    bas = [Matrix._raw(M.field, [list(r[i * n:(i + 1) * n]) for i in range(n)], n) for r in sub.rows]
    for f in bas:
        row = []
        for g in bas:
            c = sub.coordinates((f @ g).flat())
            if c is None:
                raise InternalConsistencyError("endomorphisms not closed under composition")
            row.append(c)
        prods.append(row)
    unit = sub.coordinates(Matrix.identity(M.field, n).flat())
    return Algebra(M.field, len(bas), prods, unit)


def classify_simples(S: CellularDatum) -> list[tuple[str, AModule]]:
    """One simple per irreducible label, checked pairwise non-isomorphic and complete."""
    labels = lambda_irr(S)
    simples = [(lam, simple(S, lam)) for lam in labels]
    for (l1, M1), (l2, M2) in itertools.combinations(simples, 2):
        if hom_space(M1, M2).dim:
            raise InternalConsistencyError(f"L({l1}) and L({l2}) are isomorphic")
    expected = len(pim_classes(S.algebra))
    if expected != len(simples):
        raise InternalConsistencyError(f"{len(simples)} simples from the pairing, {expected} from idempotents")
    return simples


def projective_idempotent(S: CellularDatum, lam: str) -> list:
    """A primitive idempotent ``e`` with ``e L(lam) != 0``."""
    L = simple(S, lam)
    for cls in pim_classes(S.algebra):
        if not L.act(cls.idempotent).is_zero():
            return cls.idempotent
    raise InternalConsistencyError(f"no primitive idempotent acts nontrivially on L({lam})")


def projective_cover(S: CellularDatum, lam: str) -> AModule:
    """``P(lam) = A e`` as a left ideal; ``.ambient`` is the subspace ``A e``."""
    A = S.algebra
    e = projective_idempotent(S, lam)
    Ae = A.subspace([A.mul(A.basis_vector(i), e) for i in range(A.dim)])
    return ideal_module(A, Ae, "left", f"P({lam})")


def comp_multiplicity(S: CellularDatum, M: AModule, lam: str, brute_force_limit: int = 8) -> int:
    """``[M : L(lam)] = dim Hom(P(lam), M) / dim End L(lam)``.

    For modules of dimension at most ``brute_force_limit`` the answer is
    compared with a count over an explicit composition series.
    """
    e = projective_idempotent(S, lam)
    L = simple(S, lam)
    hom_dim = M.act(e).rank()
    end_dim = hom_space(L, L).dim
    if hom_dim % end_dim:
        raise InternalConsistencyError("Hom(P, M) is not a multiple of End L")
    mult = hom_dim // end_dim
    if M.dim <= brute_force_limit:
        count = sum(1 for F in composition_factors(M) if F.dim == L.dim and hom_space(F, L).dim)
        if count != mult:
            raise InternalConsistencyError(f"[M:L({lam})]: {mult} from Hom(P, M), {count} from a composition series")
    return mult


@dataclass
class DeltaFiltration:
    """Standard filtration from the chain ``J_k P``; ``sections[k] = (label, multiplicity)``."""

    module: AModule
    chain_dims: list[int]
    sections: list[tuple[str, int]]

    def multiplicity(self, lam: str) -> int:
        return sum(m for l, m in self.sections if l == lam)


def chain_ideals(S: CellularDatum) -> list[Subspace]:
    """``J_k``: span of the first ``k`` layers in linear-extension order, ``k = 1..|Lambda|``."""
    A = S.algebra
    out = []
    vecs = []
    for lam in S.order:
        for M in S.layers[lam].maps.values():
            vecs.extend(M.columns())
        out.append(Subspace(A.field, A.dim, vecs))
    return out


def delta_filtration(S: CellularDatum, P: AModule) -> DeltaFiltration:
    """Filter a left ideal of ``A`` by ``J_k P`` and identify the sections with sums of standards."""
    require_valid(S)
    if P.ambient is None:
        raise ValueError("delta_filtration needs a left ideal (a module with an ambient subspace)")
    A = S.algebra
    amb = P.ambient
    f = A.field
    prev = Subspace.zero(f, P.dim)
    dims = [0]
    sections = []
    for lam, Jk in zip(S.order, chain_ideals(S)):
        eb = EchelonBasis(f, P.dim)
        for x in Jk.rows:
            for p in amb.rows:
                c = amb.coordinates(A.mul(x, p))
                if c is None:
                    raise InternalConsistencyError("J_k P escapes P")
                eb.add(c)
        cur = eb.subspace()
        if not cur.contains_subspace(prev):
            raise InternalConsistencyError("J_k P is not increasing")
        dims.append(cur.dim)
        step = cur.dim - prev.dim
        delta = standard_module(S, lam).module
        if step % delta.dim:
            raise InternalConsistencyError(f"section at {lam} has dimension {step}, not a multiple of "
                                           f"dim Delta({lam}) = {delta.dim}")
        m = step // delta.dim
        if m:
            big = P.submodule(cur)
            inner = Subspace(f, cur.dim, [cur.coordinates(v) for v in prev.rows])
            sec = big.quotient(inner)
            img = Subspace.zero(f, sec.dim)
            for _ in range(m):
                T = find_injection(delta, sec, avoid=img)
                if T is None:
                    raise InternalConsistencyError(f"section at {lam} is not a sum of copies of Delta({lam})")
                img = img.sum(Subspace(f, sec.dim, T.columns()))
            if img.dim != sec.dim:
                raise InternalConsistencyError(f"section at {lam} is not a sum of copies of Delta({lam})")
        sections.append((lam, m))
        prev = cur
    if prev.dim != P.dim:
        raise InternalConsistencyError("filtration does not exhaust the module")
    return DeltaFiltration(P, dims, sections)


def cyclic_generator(S: CellularDatum, lam: str, cap: int = 10 ** 4) -> list | None:
    """A vector ``v`` of ``Delta(lam)`` with ``phi(Delta^op (x) v) = D(lam)``, by bounded search."""
    L = S.layers[lam]
    D = L.D
    delta = standard_module(S, lam)
    P = phi(S, lam)
    f = S.field
    n = delta.dim

    def image_dim(v):
        eb = EchelonBasis(f, L.d)
        for j in range(L.J):
            for k in range(L.d):
                val = D.zero()
                for i in range(L.I):
                    y = delta.block(v, i)
                    if any(y):
                        val = D.add(val, P.value(j, D.basis_vector(k), i, y))
                eb.add(val)
        return len(eb)

    def candidates():
        for r in range(n):
            e = [f.zero] * n
            e[r] = f.one
            yield e
        for coeffs in itertools.product(f.small_elements(), repeat=n):
            if any(coeffs):
                yield list(coeffs)

    for t, v in enumerate(candidates()):
        if t >= cap:
            break
        if image_dim(v) == L.d:
            if delta.module.spin([v]).dim != n:
                raise InternalConsistencyError(f"cyclic vector does not generate Delta({lam})")
            layer_span = EchelonBasis(f, n)
            for M in L.maps.values():
                for col in M.columns():
                    layer_span.add(delta.module.act(col).apply(v))
            if len(layer_span) != n:
                raise InternalConsistencyError(f"A^{lam} v is a proper subspace of Delta({lam})")
            return v
    return None


def hom_delta_check(S: CellularDatum) -> Report:
    """Homomorphisms between standards and the endomorphism ring of each standard."""
    rep = Report("homomorphisms between standard modules")
    gens = {lam: cyclic_generator(S, lam) for lam in S.order}
    for lam in S.order:
        v = gens[lam]
        if v is None:
            rep.add(f"Delta({lam}) cyclic", True, "no generator with full pairing image; skipped")
            continue
        d1 = standard_module(S, lam).module
        for mu in S.order:
            if S.poset.ge(mu, lam):
                continue
            h = hom_space(d1, standard_module(S, mu).module).dim
            rep.add(f"Hom(Delta({lam}), Delta({mu})) = 0", h == 0, f"dim {h}")
        orient = endomorphism_orientation(S, lam, v)
        rep.add(f"End(Delta({lam})) ~ D({lam})", bool(orient["dim_ok"] and (orient["opposite"] or orient["same"])),
                f"dim {orient['dim']}, matches {'D^op' if orient['opposite'] else ''}"
                f"{' and ' if orient['opposite'] and orient['same'] else ''}{'D' if orient['same'] else ''}")
    return rep


def endomorphism_orientation(S: CellularDatum, lam: str, v) -> dict:
    """Compare composition in ``End(Delta)`` with multiplication in ``D`` via ``f -> phi(w (x) f(v))``."""
    L = S.layers[lam]
    D = L.D
    delta = standard_module(S, lam)
    row = standard_module(S, lam, "right")
    P = phi(S, lam)
    f = S.field
    H = hom_space(delta.module, delta.module)
    # find w with phi(w (x) v) = 1 by solving a linear system in w
    cols = []
    for j in range(L.J):
        for k in range(L.d):
            cols.append(P.pair(row.vector(j, D.basis_vector(k)), v, row, delta))
    wc = solve(Matrix.from_columns(f, cols, L.d), D.unit)
    if wc is None:
        return {"dim": H.dim, "dim_ok": H.dim == L.d, "opposite": False, "same": False}
    w = list(wc)

    def theta(T):
        return P.pair(w, T.apply(v), row, delta)

    opposite = same = True
    for F1 in H.basis:
        for F2 in H.basis:
            comp = theta(F2 @ F1)  # F2 after F1
            if comp != D.mul(theta(F1), theta(F2)):
                opposite = False
            if comp != D.mul(theta(F2), theta(F1)):
                same = False
    return {"dim": H.dim, "dim_ok": H.dim == L.d, "opposite": opposite, "same": same}


def standard_dims(S: CellularDatum) -> dict[str, int]:
    return {lam: standard_module(S, lam).dim for lam in S.order}
