"""Cellular systems: layered decompositions of an algebra indexed by a poset.

A datum assigns to each poset element ``lam`` an algebra ``D(lam)``, index
sets ``I(lam)``, ``J(lam)`` (stored as sizes, indices are ``0..size-1``) and
injective linear maps ``c[lam][i, j]: D(lam) -> A``, stored as ``dim A x dim D``
matrices.  The images must decompose ``A`` and multiplication by ``A`` must act
on each layer through coefficients in ``D(lam)`` modulo the layers above it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algcore import Algebra, Quotient, ideal_generated, ideal_witness, is_idempotent_subideal
from .errors import AxiomViolation, InternalConsistencyError, NotDivisibleError
from .exactla import EchelonBasis, Field, LinearSolver, Matrix, Subspace
from .modules import AModule, hom_space


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: object = None


@dataclass
class Report:
    title: str
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "", witness=None) -> Check:
        c = Check(name, ok, detail, witness)
        self.checks.append(c)
        return c

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tail = f"  {c.detail}" if c.detail else ""
            out.append(f"{'PASS' if c.ok else 'FAIL'}  {c.name}{tail}")
        return out


# ---------------------------------------------------------------- poset


class Poset:
    """A finite strict partial order on string labels.

    ``linear_extension`` lists the elements so that bigger elements come
    first; incomparable elements are ordered by label.
    """

    def __init__(self, elements: Sequence[str], relations: Sequence[tuple[str, str]] = ()):
        elements = tuple(elements)
        if not elements:
            raise ValueError("a cellular system needs a nonempty poset")
        if len(set(elements)) != len(elements):
            raise ValueError("poset labels must be distinct")
        known = set(elements)
        greater = set()
        for a, b in relations:
            if a not in known or b not in known:
                raise ValueError(f"relation {a} > {b} mentions an unknown label")
            greater.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(greater):
                for c, d in list(greater):
                    if b == c and (a, d) not in greater:
                        greater.add((a, d))
                        changed = True
        for a in elements:
            if (a, a) in greater:
                raise ValueError(f"relations contain a cycle through {a}")
        self.elements = elements
        self.greater = frozenset(greater)
        self.generators = tuple(sorted(set(relations)))
        order = []
        remaining = set(elements)
        while remaining:
            tops = sorted(x for x in remaining if not any((y, x) in self.greater for y in remaining))
            order.append(tops[0])
            remaining.remove(tops[0])
        self.linear_extension = tuple(order)

    def gt(self, a: str, b: str) -> bool:
        return (a, b) in self.greater

    def ge(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.greater

    def above(self, a: str) -> list[str]:
        return [b for b in self.linear_extension if (b, a) in self.greater]

    def __eq__(self, other):
        return isinstance(other, Poset) and self.elements == other.elements and self.greater == other.greater

    def __repr__(self):
        rel = ", ".join(f"{a}>{b}" for a, b in self.generators)
        return f"Poset({list(self.elements)}; {rel})"


def chain_poset(labels: Sequence[str]) -> Poset:
    """Total order with ``labels[0] > labels[1] > ...``."""
    return Poset(labels, list(zip(labels, labels[1:])))


# ---------------------------------------------------------------- datum


@dataclass
class Layer:
    label: str
    D: Algebra
    I: int
    J: int
    maps: dict[tuple[int, int], Matrix]

    @property
    def d(self) -> int:
        return self.D.dim

    @property
    def dim(self) -> int:
        return self.I * self.J * self.D.dim


def ground_algebra(field: Field) -> Algebra:
    """The field itself as a one-dimensional algebra."""
    return Algebra(field, 1, [[[1]]], [1], name=str(field))


class CellularDatum:
    def __init__(self, algebra: Algebra, poset: Poset, layers: dict[str, Layer], name: str = ""):
        if set(layers) != set(poset.elements):
            raise ValueError("layers must be given for exactly the poset elements")
        n = algebra.dim
        for lam, L in layers.items():
            if L.I < 1 or L.J < 1:
                raise ValueError(f"layer {lam}: index sets must be nonempty")
            if L.D.field != algebra.field:
                raise ValueError(f"layer {lam}: D is over a different field")
            for i in range(L.I):
                for j in range(L.J):
                    M = L.maps.get((i, j))
                    if M is None:
                        raise ValueError(f"layer {lam}: missing map c[{i},{j}]")
                    if M.shape != (n, L.d):
                        raise ValueError(f"layer {lam}: map c[{i},{j}] has shape {M.shape}, "
                                         f"expected {(n, L.d)}")
            if len(L.maps) != L.I * L.J:
                raise ValueError(f"layer {lam}: maps indexed outside I x J")
        self.algebra = algebra
        self.poset = poset
        self.layers = layers
        self.name = name
        self._cache: dict = {}

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def order(self) -> tuple[str, ...]:
        return self.poset.linear_extension

    def c(self, lam: str, i: int, j: int, x) -> list:
        return self.layers[lam].maps[(i, j)].apply(x)

    def frame(self, lam: str) -> _Frame:
        key = ("frame", lam)
        if key not in self._cache:
            self._cache[key] = _Frame(self, lam)
        return self._cache[key]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<CellularDatum{label}: {len(self.layers)} layers on {self.algebra}>"


class _Frame:
    """Per-layer bookkeeping: the spaces above and coordinates modulo them."""

    def __init__(self, S: CellularDatum, lam: str):
        A = S.algebra
        L = S.layers[lam]
        self.label = lam
        self.layer = L
        above = S.poset.above(lam)
        vecs = [col for mu in above for M in S.layers[mu].maps.values() for col in M.columns()]
        self.gt = Subspace(A.field, A.dim, vecs)
        own = [col for (i, j) in self._pairs(L) for col in L.maps[(i, j)].columns()]
        self.ge = self.gt.sum(Subspace(A.field, A.dim, own))
        self.index = [(i, j, k) for (i, j) in self._pairs(L) for k in range(L.d)]
        self.pos = {t: r for r, t in enumerate(self.index)}
        cols = [self.gt.reduce(v) for v in own]
        self.solver = LinearSolver(Matrix.from_columns(A.field, cols, A.dim))
        self.independent = self.solver.rank == len(cols)

    @staticmethod
    def _pairs(L: Layer):
        return [(i, j) for i in range(L.I) for j in range(L.J)]

    def coords(self, v) -> list | None:
        """Layer coordinates of ``v + A^{>lam}``, or ``None`` if ``v`` is outside ``A^{>=lam}``."""
        return self.solver.solve(self.gt.reduce(v))

    def block(self, coords, i: int, j: int) -> list:
        d = self.layer.d
        r = self.pos[(i, j, 0)]
        return coords[r:r + d]


# ---------------------------------------------------------------- axioms


def verify_decomposition(S: CellularDatum) -> Report:
    """Injectivity of every map and directness of the sum of all images."""
    rep = Report("decomposition")
    A = S.algebra
    eb = EchelonBasis(A.field, A.dim)
    total = 0
    for lam in S.order:
        L = S.layers[lam]
        for (i, j), M in sorted(L.maps.items()):
            if M.rank() != L.d:
                rep.add(f"c[{lam}][{i},{j}] injective", False, "map has a kernel", (lam, i, j))
                continue
            before = len(eb)
            for col in M.columns():
                eb.add(col)
            if len(eb) - before != L.d:
                rep.add(f"c[{lam}][{i},{j}] independent", False,
                        "image meets the span of earlier images", (lam, i, j))
            total += L.d
    rep.add("images span A", total == A.dim and len(eb) == A.dim,
            f"sum of layer dimensions {total}, span {len(eb)}, dim A {A.dim}")
    return rep


@dataclass
class LayerSpaces:
    label: str
    gt: Subspace
    ge: Subspace
    gt_is_ideal: bool
    ge_is_ideal: bool


def layer_spaces(S: CellularDatum, lam: str) -> LayerSpaces:
    fr = S.frame(lam)
    A = S.algebra
    return LayerSpaces(lam, fr.gt, fr.ge, ideal_witness(A, fr.gt) is None, ideal_witness(A, fr.ge) is None)


@dataclass
class ActionCoeffs:
    """Coefficients of ``a`` acting on layer ``label``.

    ``f[(i2, i)]`` is the ``D``-coordinate vector of ``f_{i2}(a, i)`` and
    ``g[(j, j2)]`` that of ``g_{j2}(j, a)``.
    """

    label: str
    a: list
    f: dict[tuple[int, int], list]
    g: dict[tuple[int, int], list]
    residual_ok: bool
    problem: str = ""
    witness: object = None


def _layer_apply(S: CellularDatum, lam: str, pairs_coeffs) -> list:
    """``sum c_{i,j}(x)`` over ``((i, j), x)``."""
    A = S.algebra
    out = A.zero()
    for (i, j), x in pairs_coeffs:
        v = S.c(lam, i, j, x)
        out = A.add(out, v)
    return out


def action_coeffs(S: CellularDatum, lam: str, a) -> ActionCoeffs:
    if hasattr(a, "coords"):
        a = list(a.coords)
    A = S.algebra
    fr = S.frame(lam)
    L = fr.layer
    D = L.D
    one = D.unit
    res = ActionCoeffs(lam, list(a), {}, {}, True)

    def fail(msg, wit):
        res.residual_ok = False
        if not res.problem:
            res.problem = msg
            res.witness = wit
        return res

    for i in range(L.I):
        y = A.mul(a, S.c(lam, i, 0, one))
        co = fr.coords(y)
        if co is None:
            return fail(f"a*c[{i},0](1) leaves A^>={lam}", ("left", lam, i, 0))
        for (i2, j2, k) in fr.index:
            if j2 != 0 and co[fr.pos[(i2, j2, k)]]:
                return fail(f"a*c[{i},0](1) has a component in column {j2}", ("left", lam, i, 0))
        for i2 in range(L.I):
            res.f[(i2, i)] = fr.block(co, i2, 0)
    for j in range(L.J):
        y = A.mul(S.c(lam, 0, j, one), a)
        co = fr.coords(y)
        if co is None:
            return fail(f"c[0,{j}](1)*a leaves A^>={lam}", ("right", lam, 0, j))
        for (i2, j2, k) in fr.index:
            if i2 != 0 and co[fr.pos[(i2, j2, k)]]:
                return fail(f"c[0,{j}](1)*a has a component in row {i2}", ("right", lam, 0, j))
        for j2 in range(L.J):
            res.g[(j, j2)] = fr.block(co, 0, j2)
    for i in range(L.I):
        for j in range(L.J):
            for k in range(L.d):
                x = D.basis_vector(k)
                lhs = A.mul(a, S.c(lam, i, j, x))
                rhs = _layer_apply(S, lam, [((i2, j), D.mul(res.f[(i2, i)], x)) for i2 in range(L.I)])
                if not fr.gt.contains(A.sub(lhs, rhs)):
                    return fail(f"left coefficients for i={i} depend on j={j} or x=d{k}", ("left", lam, i, j, k))
                lhs = A.mul(S.c(lam, i, j, x), a)
                rhs = _layer_apply(S, lam, [((i, j2), D.mul(x, res.g[(j, j2)])) for j2 in range(L.J)])
                if not fr.gt.contains(A.sub(lhs, rhs)):
                    return fail(f"right coefficients for j={j} depend on i={i} or x=d{k}", ("right", lam, i, j, k))
    return res


@dataclass
class AxiomReport:
    ok: bool
    report: Report
    witnesses: list = dc_field(default_factory=list)


def verify_axioms(S: CellularDatum) -> AxiomReport:
    """Decomposition, layer ideals and the action condition on every basis element."""
    if "axioms" in S._cache:
        return S._cache["axioms"]
    A = S.algebra
    rep = verify_decomposition(S)
    rep.title = "cellular system axioms"
    witnesses = [c.witness for c in rep.failures() if c.witness is not None]
    if rep.ok:
        tables = {}
        for lam in S.order:
            ls = layer_spaces(S, lam)
            rep.add(f"A^>{lam} is an ideal", ls.gt_is_ideal)
            F, G = [], []
            bad = None
            for m in range(A.dim):
                ac = action_coeffs(S, lam, A.basis_vector(m))
                if not ac.residual_ok:
                    bad = (m, ac)
                    break
                F.append(ac.f)
                G.append(ac.g)
            if bad is None:
                rep.add(f"action on layer {lam}", True)
                tables[lam] = (F, G)
            else:
                m, ac = bad
                rep.add(f"action on layer {lam}", False, f"a=e{m}: {ac.problem}", (lam, m) + tuple(ac.witness))
                witnesses.append((lam, m) + tuple(ac.witness))
        if rep.ok:
            S._cache["tables"] = tables
    out = AxiomReport(rep.ok, rep, witnesses)
    S._cache["axioms"] = out
    return out


def require_valid(S: CellularDatum) -> None:
    r = verify_axioms(S)
    if not r.ok:
        first = r.report.failures()[0]
        raise AxiomViolation(f"not a cellular system: {first.name} {first.detail}".strip(), first.witness)


def _tables(S: CellularDatum, lam: str):
    require_valid(S)
    return S._cache["tables"][lam]


def coefficients(S: CellularDatum, lam: str, a) -> tuple[dict, dict]:
    """``(f, g)`` for an arbitrary element, by linearity from the basis tables."""
    if hasattr(a, "coords"):
        a = list(a.coords)
    F, G = _tables(S, lam)
    D = S.layers[lam].D
    f, g = {}, {}
    for key in F[0]:
        f[key] = D.combine(a, [F[m][key] for m in range(len(a))])
    for key in G[0]:
        g[key] = D.combine(a, [G[m][key] for m in range(len(a))])
    return f, g


# ---------------------------------------------------------------- construction from a basis


def from_cellular_basis(A: Algebra, poset: Poset, cells: dict[str, dict[tuple[int, int], Sequence]],
                        name: str = "") -> CellularDatum:
    """Cellular system with ``D = k`` and ``c[lam][i, j](x) = x * a``.

    ``cells[lam][(i, j)]`` is the coordinate vector of the basis element
    labelled ``(lam, i, j)``.
    """
    k = ground_algebra(A.field)
    layers = {}
    for lam, entries in cells.items():
        I = 1 + max(i for i, _ in entries)
        J = 1 + max(j for _, j in entries)
        maps = {(i, j): Matrix.from_columns(A.field, [v], A.dim) for (i, j), v in entries.items()}
        layers[lam] = Layer(lam, k, I, J, maps)
    S = CellularDatum(A, poset, layers, name)
    require_valid(S)
    return S


def datum_transport(S: CellularDatum, A2: Algebra, P_inv: Matrix, name: str = "") -> CellularDatum:
    """Same datum with maps composed with a change of basis ``P_inv`` of the algebra."""
    layers = {lam: Layer(lam, L.D, L.I, L.J, {k: P_inv @ M for k, M in L.maps.items()})
              for lam, L in S.layers.items()}
    return CellularDatum(A2, S.poset, layers, name or S.name)


# ---------------------------------------------------------------- standard modules


@dataclass
class StdModule:
    """``Delta(lam)`` (side ``left``) or its row version (side ``right``).

    Basis vector ``r * d + k`` is ``a_r(d_k)`` (left, ``r`` in ``I``) or
    ``b_r(d_k)`` (right, ``r`` in ``J``).  ``d_action[l]`` is the matrix of the
    commuting ``D``-action by the basis element ``d_l``.
    """

    label: str
    side: str
    module: AModule
    d_action: list[Matrix]
    rank: int
    d: int

    def index(self, r: int, k: int = 0) -> int:
        return r * self.d + k

    def vector(self, r: int, x) -> list:
        v = [self.module.field.zero] * self.module.dim
        v[r * self.d:(r + 1) * self.d] = list(x)
        return v

    def block(self, v, r: int) -> list:
        return list(v[r * self.d:(r + 1) * self.d])

    @property
    def dim(self) -> int:
        return self.module.dim


def standard_module(S: CellularDatum, lam: str, side: str = "left") -> StdModule:
    key = ("std", lam, side)
    if key in S._cache:
        return S._cache[key]
    F, G = _tables(S, lam)
    A = S.algebra
    L = S.layers[lam]
    D = L.D
    d = L.d
    f = A.field
    if side == "left":
        rank = L.I
        mats = []
        for m in range(A.dim):
            cols = []
            for i in range(L.I):
                for k in range(d):
                    col = []
                    for i2 in range(L.I):
                        col += D.mul(F[m][(i2, i)], D.basis_vector(k))
                    cols.append(col)
            mats.append(Matrix.from_columns(f, cols, rank * d))
        dact = []
        for l in range(d):
            cols = []
            for i in range(L.I):
                for k in range(d):
                    col = [f.zero] * (rank * d)
                    col[i * d:(i + 1) * d] = D.mul(D.basis_vector(k), D.basis_vector(l))
                    cols.append(col)
            dact.append(Matrix.from_columns(f, cols, rank * d))
    elif side == "right":
        rank = L.J
        mats = []
        for m in range(A.dim):
            cols = []
            for j in range(L.J):
                for k in range(d):
                    col = []
                    for j2 in range(L.J):
                        col += D.mul(D.basis_vector(k), G[m][(j, j2)])
                    cols.append(col)
            mats.append(Matrix.from_columns(f, cols, rank * d))
        dact = []
        for l in range(d):
            cols = []
            for j in range(L.J):
                for k in range(d):
                    col = [f.zero] * (rank * d)
                    col[j * d:(j + 1) * d] = D.mul(D.basis_vector(l), D.basis_vector(k))
                    cols.append(col)
            dact.append(Matrix.from_columns(f, cols, rank * d))
    else:
        raise ValueError(f"side must be left or right, not {side!r}")
    name = f"Delta({lam})" if side == "left" else f"Delta^op({lam})"
    M = AModule(A, mats, side, name)
    for v in S.frame(lam).gt.rows:
        if not M.act(v).is_zero():
            raise InternalConsistencyError(f"A^>{lam} acts nontrivially on {name}")
    out = StdModule(lam, side, M, dact, rank, d)
    S._cache[key] = out
    return out


def costandard_module(S: CellularDatum, lam: str) -> AModule:
    """The ``k``-dual of the row module, a left module."""
    M = standard_module(S, lam, "right").module.dual()
    M.name = f"Nabla({lam})"
    return M


# ---------------------------------------------------------------- gram table and pairing


@dataclass
class GramTable:
    """``entries[(j, i)]`` is the ``D``-coordinate vector of ``f(j, i)``."""

    label: str
    entries: dict[tuple[int, int], list]
    I: int
    J: int

    def __getitem__(self, key):
        return self.entries[key]

    def is_zero(self) -> bool:
        return not any(x for v in self.entries.values() for x in v)


def gram_table(S: CellularDatum, lam: str) -> GramTable:
    """Read ``f(j, i2)`` from ``c_{i,j}(1) c_{i2,j2}(1) = c_{i,j2}(f(j, i2))`` and cross-check it."""
    key = ("gram", lam)
    if key in S._cache:
        return S._cache[key]
    require_valid(S)
    A = S.algebra
    fr = S.frame(lam)
    L = fr.layer
    D = L.D
    one = D.unit
    entries = {}
    for j in range(L.J):
        for i2 in range(L.I):
            found = None
            for i in range(L.I):
                for j2 in range(L.J):
                    co = fr.coords(A.mul(S.c(lam, i, j, one), S.c(lam, i2, j2, one)))
                    if co is None:
                        raise InternalConsistencyError("product of layer elements left A^>=lam")
                    val = fr.block(co, i, j2)
                    rest = [x for (a, b, k), x in zip(fr.index, co) if (a, b) != (i, j2)]
                    if any(rest):
                        raise InternalConsistencyError(f"product c[{i},{j}]c[{i2},{j2}] spills outside c[{i},{j2}]")
                    if found is None:
                        found = val
                    elif found != val:
                        raise InternalConsistencyError(f"f({j},{i2}) depends on the probe indices")
            entries[(j, i2)] = found
    G = GramTable(lam, entries, L.I, L.J)
    _cross_check_gram(S, lam, G)
    S._cache[key] = G
    return G


def _cross_check_gram(S: CellularDatum, lam: str, G: GramTable) -> None:
    A = S.algebra
    fr = S.frame(lam)
    L = fr.layer
    D = L.D
    one = D.unit
    for j in range(L.J):
        for i2 in range(L.I):
            z = G[(j, i2)]
            for i in range(L.I):
                fcoef, _ = coefficients(S, lam, S.c(lam, i, j, one))
                if fcoef[(i, i2)] != z:
                    raise InternalConsistencyError(f"left-coefficient route disagrees on f({j},{i2})")
            for j2 in range(L.J):
                _, gcoef = coefficients(S, lam, S.c(lam, i2, j2, one))
                if gcoef[(j, j2)] != z:
                    raise InternalConsistencyError(f"right-coefficient route disagrees on f({j},{i2})")
    # full law c(x) c(y) = c(x f y) on basis elements of D
    for i in range(L.I):
        for j in range(L.J):
            for i2 in range(L.I):
                for j2 in range(L.J):
                    for k in range(L.d):
                        for l in range(L.d):
                            x, y = D.basis_vector(k), D.basis_vector(l)
                            lhs = A.mul(S.c(lam, i, j, x), S.c(lam, i2, j2, y))
                            rhs = S.c(lam, i, j2, D.mul3(x, G[(j, i2)], y))
                            if not fr.gt.contains(A.sub(lhs, rhs)):
                                raise InternalConsistencyError("product law c(x)c(y) = c(x f y) fails")


@dataclass
class Pairing:
    """``phi(b_j(x) (x) a_i(y)) = x f(j, i) y`` with values in ``D``."""

    label: str
    D: Algebra
    gram: GramTable
    image: Subspace
    balanced: bool

    def value(self, j: int, x, i: int, y) -> list:
        return self.D.mul3(x, self.gram[(j, i)], y)

    def pair(self, row_vec, col_vec, row: StdModule, col: StdModule) -> list:
        """Pair an element of the row module with an element of ``Delta``."""
        out = self.D.zero()
        for j in range(row.rank):
            x = row.block(row_vec, j)
            if not any(x):
                continue
            for i in range(col.rank):
                y = col.block(col_vec, i)
                if any(y):
                    out = self.D.add(out, self.value(j, x, i, y))
        return out

    def is_zero(self) -> bool:
        return self.gram.is_zero()


def phi(S: CellularDatum, lam: str) -> Pairing:
    key = ("phi", lam)
    if key in S._cache:
        return S._cache[key]
    G = gram_table(S, lam)
    L = S.layers[lam]
    D = L.D
    image = ideal_generated(D, list(G.entries.values()))
    delta = standard_module(S, lam, "left")
    row = standard_module(S, lam, "right")
    balanced = True
    A = S.algebra
    probe = Pairing(lam, D, G, image, True)
    for m in range(A.dim):
        for j in range(L.J):
            for k in range(L.d):
                bvec = row.vector(j, D.basis_vector(k))
                ba = row.module.action[m].apply(bvec)
                for i in range(L.I):
                    for l in range(L.d):
                        avec = delta.vector(i, D.basis_vector(l))
                        aa = delta.module.action[m].apply(avec)
                        if probe.pair(ba, avec, row, delta) != probe.pair(bvec, aa, row, delta):
                            balanced = False
    P = Pairing(lam, D, G, image, balanced)
    if not balanced:
        raise InternalConsistencyError(f"pairing on layer {lam} is not balanced over A")
    S._cache[key] = P
    return P


# ---------------------------------------------------------------- the layer as a bimodule


def layer_module(S: CellularDatum, lam: str, side: str = "left") -> AModule:
    """``A^{>=lam} / A^{>lam}`` in layer coordinates, as a left or right module."""
    A = S.algebra
    fr = S.frame(lam)
    mats = []
    for m in range(A.dim):
        e = A.basis_vector(m)
        cols = []
        for (i, j, k) in fr.index:
            v = S.c(lam, i, j, fr.layer.D.basis_vector(k))
            w = A.mul(e, v) if side == "left" else A.mul(v, e)
            co = fr.coords(w)
            if co is None:
                raise InternalConsistencyError("layer is not stable under multiplication")
            cols.append(co)
        mats.append(Matrix.from_columns(A.field, cols, len(fr.index)))
    return AModule(A, mats, side, f"A^{lam}")


@dataclass
class MIsoReport:
    label: str
    matrix: Matrix
    bijective: bool
    left_linear: bool
    right_linear: bool
    left_blocks: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.left_linear and self.right_linear and self.left_blocks


def m_iso(S: CellularDatum, lam: str) -> MIsoReport:
    """``a_i(d_k) (x) b_j(1) -> c_{i,j}(d_k)`` from ``Delta (x)_D Delta^op`` to the layer."""
    A = S.algebra
    fr = S.frame(lam)
    L = fr.layer
    D = L.D
    d = L.d
    delta = standard_module(S, lam, "left")
    row = standard_module(S, lam, "right")
    # tensor basis (i, k, j) in normal form a_i(d_k) (x) b_j(1)
    tindex = [(i, k, j) for i in range(L.I) for k in range(d) for j in range(L.J)]
    tpos = {t: r for r, t in enumerate(tindex)}
    cols = []
    for (i, k, j) in tindex:
        co = fr.coords(S.c(lam, i, j, D.basis_vector(k)))
        cols.append(co)
    Mmat = Matrix.from_columns(A.field, cols, len(fr.index))
    bij = Mmat.rank() == len(fr.index) == len(tindex)

    def tensor(avec, bvec) -> list:
        """Normal form of an elementary tensor as a vector on ``tindex``."""
        out = [A.field.zero] * len(tindex)
        for i in range(L.I):
            x = delta.block(avec, i)
            if not any(x):
                continue
            for j in range(L.J):
                y = row.block(bvec, j)
                if not any(y):
                    continue
                xy = D.mul(x, y)
                for k in range(d):
                    if xy[k]:
                        r = tpos[(i, k, j)]
                        out[r] = out[r] + xy[k]
        return out

    lay_left = layer_module(S, lam, "left")
    lay_right = layer_module(S, lam, "right")
    left_ok = right_ok = True
    for m in range(A.dim):
        for (i, k, j) in tindex:
            avec = delta.vector(i, D.basis_vector(k))
            bvec = row.vector(j, D.unit)
            src = Mmat.apply(tensor(avec, bvec))
            lhs = Mmat.apply(tensor(delta.module.action[m].apply(avec), bvec))
            if lhs != lay_left.action[m].apply(src):
                left_ok = False
            rhs = Mmat.apply(tensor(avec, row.module.action[m].apply(bvec)))
            if rhs != lay_right.action[m].apply(src):
                right_ok = False
    blocks_ok = True
    for j in range(L.J):
        E = Matrix.from_columns(A.field, [[A.field.one if t == (i, j, k) else A.field.zero for t in fr.index]
                                          for i in range(L.I) for k in range(d)], len(fr.index))
        for m in range(A.dim):
            if lay_left.action[m] @ E != E @ delta.module.action[m]:
                blocks_ok = False
    return MIsoReport(lam, Mmat, bij, left_ok, right_ok, blocks_ok)


def check_associativity(S: CellularDatum, lam: str) -> bool:
    """``m(a (x) b) . a2 == a . phi(b (x) a2)`` on basis elements, both sides computed separately."""
    L = S.layers[lam]
    D = L.D
    delta = standard_module(S, lam, "left")
    row = standard_module(S, lam, "right")
    P = phi(S, lam)
    for i in range(L.I):
        for k in range(L.d):
            for j in range(L.J):
                for l in range(L.d):
                    rep = S.c(lam, i, j, D.mul(D.basis_vector(k), D.basis_vector(l)))
                    act = delta.module.act(rep)
                    for i2 in range(L.I):
                        for r in range(L.d):
                            a2 = delta.vector(i2, D.basis_vector(r))
                            lhs = act.apply(a2)
                            val = P.value(j, D.basis_vector(l), i2, D.basis_vector(r))
                            rhs = delta.vector(i, D.mul(D.basis_vector(k), val))
                            if lhs != rhs:
                                return False
    return True


def order_compat(S: CellularDatum) -> Report:
    """If a generator of layer ``mu`` acts nonzero on ``Delta(lam)`` then ``lam >= mu``."""
    rep = Report("order compatibility")
    for lam in S.order:
        delta = standard_module(S, lam, "left")
        for mu in S.order:
            L = S.layers[mu]
            hit = None
            for (i, j), M in sorted(L.maps.items()):
                for col in M.columns():
                    if not delta.module.act(col).is_zero():
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is not None and not S.poset.ge(lam, mu):
                rep.add(f"c^{mu} on Delta({lam})", False, f"c[{hit[0]},{hit[1]}] acts nonzero", (mu, lam, hit))
    if not rep.checks:
        rep.add("generators act only on smaller-or-equal layers", True)
    return rep


def layer_realizations(S: CellularDatum, lam: str) -> Report:
    """Column ``j`` of the layer realises ``Delta(lam)``, row ``i`` realises the row module."""
    rep = Report(f"realisations of layer {lam}")
    A = S.algebra
    fr = S.frame(lam)
    L = fr.layer
    d = L.d
    delta = standard_module(S, lam, "left")
    row = standard_module(S, lam, "right")
    lay_left = layer_module(S, lam, "left")
    lay_right = layer_module(S, lam, "right")
    one, zero = A.field.one, A.field.zero
    for j in range(L.J):
        E = Matrix.from_columns(A.field, [[one if t == (i, j, k) else zero for t in fr.index]
                                          for i in range(L.I) for k in range(d)], len(fr.index))
        ok = all(lay_left.action[m] @ E == E @ delta.module.action[m] for m in range(A.dim))
        rep.add(f"column {j} ~ Delta({lam})", ok)
    for i in range(L.I):
        E = Matrix.from_columns(A.field, [[one if t == (i, j, k) else zero for t in fr.index]
                                          for j in range(L.J) for k in range(d)], len(fr.index))
        ok = all(lay_right.action[m] @ E == E @ row.module.action[m] for m in range(A.dim))
        rep.add(f"row {i} ~ Delta^op({lam})", ok)
    return rep


def emit_basis(S: CellularDatum) -> list[tuple[str, int, int, int, list]]:
    """The basis ``c[lam][i, j](d_k)`` of ``A`` in linear-extension order."""
    out = []
    for lam in S.order:
        L = S.layers[lam]
        for i in range(L.I):
            for j in range(L.J):
                for k in range(L.d):
                    out.append((lam, i, j, k, S.c(lam, i, j, L.D.basis_vector(k))))
    return out


# ---------------------------------------------------------------- divisibility


def layer_division_verdicts(S: CellularDatum) -> dict:
    from .algcore import division_verdict
    key = "division"
    if key not in S._cache:
        S._cache[key] = {lam: division_verdict(S.layers[lam].D) for lam in S.order}
    return S._cache[key]


def require_divisible(S: CellularDatum) -> None:
    for lam, v in layer_division_verdicts(S).items():
        if v.status != "Division":
            raise NotDivisibleError(f"D({lam}) is not certified to be a division algebra ({v.status})")


def layer_quotient(S: CellularDatum, lam: str) -> tuple[Quotient, Subspace]:
    """``A/A^{>lam}`` and the image of ``A^{>=lam}`` in it."""
    fr = S.frame(lam)
    Q = Quotient(S.algebra, fr.gt)
    return Q, Q.project_subspace(fr.ge)


def layer_is_idempotent(S: CellularDatum, lam: str) -> bool:
    Q, J = layer_quotient(S, lam)
    return is_idempotent_subideal(Q.algebra, J)


def delta_hom(S: CellularDatum, lam: str, mu: str):
    return hom_space(standard_module(S, lam).module, standard_module(S, mu).module)
