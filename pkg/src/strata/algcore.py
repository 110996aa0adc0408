"""Finite-dimensional associative algebras given by structure constants.

An :class:`Algebra` of dimension ``n`` stores, for each pair of basis
elements, the coordinate vector of their product.  Elements are coordinate
lists; :class:`AlgebraElement` wraps them with operators for interactive use.

The radical is computed from the trace form ``Tr(L_a L_b)`` when that form
detects nilpotence (characteristic 0 or larger than the dimension); otherwise
the left regular module is split into composition factors and their
annihilators are intersected.
"""

from __future__ import annotations

import contextlib
import contextvars
import itertools
import math
import random
from dataclasses import dataclass, field as dc_field, replace
from typing import Sequence

from . import meataxe, poly
from .errors import (DimensionMismatch, InconclusiveError, InternalConsistencyError,
                     MethodInapplicable, NotAnIdealError)
from .exactla import EchelonBasis, Field, LinearSolver, Matrix, Mod, Subspace, integer_form, kernel_basis, rationals


@dataclass(frozen=True)
class Settings:
    """Knobs shared by the exact decision procedures."""

    exhaustion_cap: int = 2 ** 20
    char_p_fallback: bool = True
    search_budget: int = 10 ** 5
    split_budget: int = 400


_SETTINGS: contextvars.ContextVar[Settings] = contextvars.ContextVar("strata_settings", default=Settings())


def settings() -> Settings:
    return _SETTINGS.get()


@contextlib.contextmanager
def using(**overrides):
    token = _SETTINGS.set(replace(_SETTINGS.get(), **overrides))
    try:
        yield _SETTINGS.get()
    finally:
        _SETTINGS.reset(token)


class Algebra:
    """Unital associative algebra with basis ``e_0 .. e_{n-1}``.

    ``products[i][j]`` is the coordinate vector of ``e_i * e_j``.  The
    constructor does not check associativity; use :func:`algebra_verify`.
    """

    def __init__(self, field: Field, dim: int, products: Sequence[Sequence[Sequence]], unit: Sequence,
                 name: str = ""):
        if len(products) != dim or any(len(r) != dim for r in products):
            raise DimensionMismatch("product table must be dim x dim")
        if len(unit) != dim:
            raise DimensionMismatch("unit must have dim coordinates")
        self.field = field
        self.dim = dim
        self.name = name
        self.products = [[[field(x) for x in v] for v in row] for row in products]
        for row in self.products:
            for v in row:
                if len(v) != dim:
                    raise DimensionMismatch("product vector of wrong length")
        self.unit = [field(x) for x in unit]
        self._sparse = [[[(k, x) for k, x in enumerate(v) if x] for v in row] for row in self.products]
        # integer image of the table for the products: numerators over one common denominator over Q,
        # residues over GF(p)
        if field.characteristic:
            self._den = 1
            self._isparse = [[[(k, x.v) for k, x in v] for v in row] for row in self._sparse]
        else:
            self._den = math.lcm(1, *(x.denominator for row in self._sparse for v in row for _, x in v))
            self._isparse = [[[(k, x.numerator * (self._den // x.denominator)) for k, x in v] for v in row]
                             for row in self._sparse]
        self._cache: dict = {}

    @classmethod
    def from_structure_constants(cls, field: Field, dim: int, sc: dict, unit: Sequence,
                                 name: str = "") -> Algebra:
        z = field.zero
        products = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), x in sc.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatch(f"structure constant index ({i},{j},{k}) out of range")
            products[i][j][k] = field(x)
        return cls(field, dim, products, unit, name)

    def sc(self, i: int, j: int, k: int):
        return self.products[i][j][k]

    def structure_constants(self) -> list[tuple[int, int, int, object]]:
        return [(i, j, k, x) for i in range(self.dim) for j in range(self.dim)
                for k, x in self._sparse[i][j]]

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis_vector(self, i: int) -> list:
        v = self.zero()
        v[i] = self.field.one
        return v

    def mul(self, u: Sequence, v: Sequence) -> list:
        ui, du = integer_form(self.field, u)
        vi, dv = integer_form(self.field, v)
        acc = [0] * self.dim
        vnz = [(j, y) for j, y in enumerate(vi) if y]
        for i, x in enumerate(ui):
            if not x:
                continue
            row = self._isparse[i]
            for j, y in vnz:
                c = x * y
                for k, s in row[j]:
                    acc[k] += c * s
        F = self.field
        p = F.characteristic
        if p:
            return [Mod(a, p) for a in acc]
        den = du * dv * self._den
        return rationals(acc, den)

    def mul3(self, u, v, w) -> list:
        return self.mul(self.mul(u, v), w)

    def add(self, u, v) -> list:
        return [a + b for a, b in zip(u, v)]

    def sub(self, u, v) -> list:
        return [a - b for a, b in zip(u, v)]

    def scale(self, c, u) -> list:
        return [c * a for a in u]

    def combine(self, coeffs, vectors) -> list:
        out = self.zero()
        for c, v in zip(coeffs, vectors):
            if c:
                for k, x in enumerate(v):
                    if x:
                        out[k] = out[k] + c * x
        return out

    def power(self, u, k: int) -> list:
        out = list(self.unit)
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def evaluate(self, p: list, u) -> list:
        """``p(u)`` with the constant term read as a multiple of the unit."""
        out = self.zero()
        for c in reversed(p):
            out = self.mul(out, u)
            if c:
                out = [a + c * b for a, b in zip(out, self.unit)]
        return out

    def element(self, coords) -> AlgebraElement:
        return AlgebraElement(self, coords)

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit)

    def basis_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self, self.basis_vector(i))

    @property
    def left_basis_matrices(self) -> list[Matrix]:
        if "L" not in self._cache:
            n = self.dim
            self._cache["L"] = [Matrix._raw(self.field, [[self.products[i][j][k] for j in range(n)]
                                                          for k in range(n)], n) for i in range(n)]
        return self._cache["L"]

    @property
    def right_basis_matrices(self) -> list[Matrix]:
        if "R" not in self._cache:
            n = self.dim
            self._cache["R"] = [Matrix._raw(self.field, [[self.products[j][i][k] for j in range(n)]
                                                          for k in range(n)], n) for i in range(n)]
        return self._cache["R"]

    def left_matrix(self, u) -> Matrix:
        return Matrix.from_columns(self.field, [self.mul(u, self.basis_vector(j)) for j in range(self.dim)],
                                   self.dim)

    def right_matrix(self, u) -> Matrix:
        return Matrix.from_columns(self.field, [self.mul(self.basis_vector(j), u) for j in range(self.dim)],
                                   self.dim)

    def opposite(self) -> Algebra:
        if "op" not in self._cache:
            n = self.dim
            op = Algebra(self.field, n, [[self.products[j][i] for j in range(n)] for i in range(n)],
                         self.unit, name=(self.name + "^op") if self.name else "")
            op._cache["op"] = self
            self._cache["op"] = op
        return self._cache["op"]

    def is_commutative(self) -> bool:
        return all(self.products[i][j] == self.products[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def subspace(self, vectors) -> Subspace:
        return Subspace(self.field, self.dim, vectors)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim and self.products == other.products
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(map(tuple, self.unit))))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Algebra{label} over {self.field}, dim {self.dim}>"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: Sequence):
        if len(coords) != algebra.dim:
            raise DimensionMismatch(f"{len(coords)} coordinates for an algebra of dim {algebra.dim}")
        self.algebra = algebra
        self.coords = tuple(algebra.field(x) for x in coords)

    def _other(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise DimensionMismatch("elements of different algebras")
            return other.coords
        return None

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            c = self.algebra.field(other)
            return AlgebraElement(self.algebra, [c * x for x in self.coords])
        return AlgebraElement(self.algebra, self.algebra.mul(self.coords, o))

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * x for x in self.coords])

    def __add__(self, other):
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, self._other(other))])

    def __sub__(self, other):
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, self._other(other))])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __pow__(self, k: int):
        return AlgebraElement(self.algebra, self.algebra.power(self.coords, k))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra == other.algebra and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        f = self.algebra.field
        return "(" + ", ".join(f.format(x) for x in self.coords) + ")"


# ---------------------------------------------------------------- verification


@dataclass
class AlgebraReport:
    ok: bool
    associativity_violations: list[tuple[int, int, int]] = dc_field(default_factory=list)
    unit_violations: list[tuple[str, int]] = dc_field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return "associative with two-sided unit"
        parts = []
        if self.associativity_violations:
            parts.append(f"{len(self.associativity_violations)} non-associative triple(s), first "
                         f"{self.associativity_violations[0]}")
        if self.unit_violations:
            side, i = self.unit_violations[0]
            parts.append(f"unit fails on the {side} at e_{i}")
        return "; ".join(parts)


def algebra_verify(A: Algebra) -> AlgebraReport:
    """Check associativity on every basis triple and the unit law on every basis element."""
    report = AlgebraReport(ok=True)
    n = A.dim
    for i in range(n):
        for j in range(n):
            ij = A.products[i][j]
            for k in range(n):
                if A.mul(ij, A.basis_vector(k)) != A.mul(A.basis_vector(i), A.products[j][k]):
                    report.associativity_violations.append((i, j, k))
    for i in range(n):
        e = A.basis_vector(i)
        if A.mul(A.unit, e) != e:
            report.unit_violations.append(("left", i))
        if A.mul(e, A.unit) != e:
            report.unit_violations.append(("right", i))
    report.ok = not report.associativity_violations and not report.unit_violations
    return report


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def regular_rep(a: AlgebraElement, side: str = "left") -> Matrix:
    """Matrix of ``x -> a*x`` (left) or ``x -> x*a`` (right) on the basis."""
    if side == "left":
        return a.algebra.left_matrix(a.coords)
    if side == "right":
        return a.algebra.right_matrix(a.coords)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# ---------------------------------------------------------------- ideals, quotients


def _closure(A: Algebra, vectors, left: bool, right: bool) -> Subspace:
    eb = EchelonBasis(A.field, A.dim)
    queue = []
    for v in vectors:
        if eb.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for m in range(A.dim):
            e = A.basis_vector(m)
            news = []
            if left:
                news.append(A.mul(e, v))
            if right:
                news.append(A.mul(v, e))
            for w in news:
                if eb.add(w):
                    queue.append(w)
    return eb.subspace()


def ideal_generated(A: Algebra, gens, sided: str = "twosided") -> Subspace:
    """Smallest left, right or two-sided ideal containing ``gens``."""
    vecs = [g.coords if isinstance(g, AlgebraElement) else g for g in gens]
    if isinstance(gens, Subspace):
        vecs = gens.vectors()
    if sided not in ("left", "right", "twosided"):
        raise ValueError(f"sided must be left, right or twosided, not {sided!r}")
    return _closure(A, vecs, left=sided in ("left", "twosided"), right=sided in ("right", "twosided"))


def product_space(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all products ``u*v``."""
    eb = EchelonBasis(A.field, A.dim)
    for u in U.rows:
        for v in V.rows:
            eb.add(A.mul(u, v))
    return eb.subspace()


def ideal_witness(A: Algebra, I: Subspace, sided: str = "twosided"):
    """First ``(a, v)`` with ``v`` in ``I`` and a product escaping ``I``, or ``None``."""
    for m in range(A.dim):
        e = A.basis_vector(m)
        for v in I.rows:
            if sided in ("left", "twosided") and not I.contains(A.mul(e, v)):
                return ("left", e, list(v))
            if sided in ("right", "twosided") and not I.contains(A.mul(v, e)):
                return ("right", e, list(v))
    return None


def is_ideal(A: Algebra, I: Subspace, sided: str = "twosided") -> bool:
    return ideal_witness(A, I, sided) is None


class Quotient:
    """``A/I`` together with the projection and a fixed linear section.

    The quotient basis is indexed by the non-pivot columns of ``rref(I)``.
    ``section`` solves ``proj x = b`` with free variables set to zero.
    """

    def __init__(self, A: Algebra, I: Subspace):
        w = ideal_witness(A, I)
        if w is not None:
            side, a, v = w
            prod = A.mul(a, v) if side == "left" else A.mul(v, a)
            pair = (a, v) if side == "left" else (v, a)
            raise NotAnIdealError(f"product {pair[0]} * {pair[1]} = {prod} leaves the subspace", witness=pair)
        self.parent = A
        self.kernel = I
        self.comp = I.complement_indices()
        f = A.field
        n, s = A.dim, len(self.comp)
        cols = [self.project(A.basis_vector(c)) for c in range(n)]
        self.proj = Matrix.from_columns(f, cols, s)
        solver = LinearSolver(self.proj)
        sec_cols = []
        for q in range(s):
            e = [f.zero] * s
            e[q] = f.one
            sec_cols.append(solver.solve(e))
        self.section = Matrix.from_columns(f, sec_cols, n)
        z = f.zero
        prods = [[[z] * s for _ in range(s)] for _ in range(s)]
        lifts = sec_cols
        for a in range(s):
            for b in range(s):
                prods[a][b] = self.project(A.mul(lifts[a], lifts[b]))
        self.algebra = Algebra(f, s, prods, self.project(A.unit),
                               name=f"{A.name}/I" if A.name else "")

    def project(self, v) -> list:
        red = self.kernel.reduce(v)
        return [red[c] for c in self.comp]

    def lift(self, v) -> list:
        return self.section.apply(v)

    def project_subspace(self, U: Subspace) -> Subspace:
        return Subspace(self.parent.field, len(self.comp), [self.project(u) for u in U.rows])

    def preimage(self, U: Subspace) -> Subspace:
        return self.kernel.sum(Subspace(self.parent.field, self.parent.dim, [self.lift(u) for u in U.rows]))


def quotient_algebra(A: Algebra, I: Subspace) -> Quotient:
    return Quotient(A, I)


def is_idempotent_subideal(A: Algebra, J: Subspace) -> bool:
    """Is ``J`` a two-sided ideal with ``J*J == J``?"""
    if not is_ideal(A, J):
        return False
    return product_space(A, J, J) == J


def subalgebra(A: Algebra, S: Subspace, unit) -> Algebra:
    """The algebra structure on ``S`` (closed under products, with the given unit)."""
    n = S.dim
    prods = []
    for u in S.rows:
        row = []
        for v in S.rows:
            c = S.coordinates(A.mul(u, v))
            if c is None:
                raise InternalConsistencyError("subspace is not closed under multiplication")
            row.append(c)
        prods.append(row)
    uc = S.coordinates(unit)
    if uc is None:
        raise InternalConsistencyError("unit lies outside the subspace")
    return Algebra(A.field, n, prods, uc)


def corner(A: Algebra, e) -> tuple[Algebra, Subspace]:
    """``eAe`` as an algebra with unit ``e``, and its embedding in ``A``."""
    S = A.subspace([A.mul3(e, A.basis_vector(i), e) for i in range(A.dim)])
    return subalgebra(A, S, e), S


# ---------------------------------------------------------------- radical


def element_minpoly(A: Algebra, u) -> list:
    eb = EchelonBasis(A.field, A.dim, track=True)
    p = list(A.unit)
    while True:
        rel = eb.add(p)
        if rel is not True:
            return poly.trim(rel)
        p = A.mul(u, p)


def _trace_radical(A: Algebra) -> Subspace:
    n = A.dim
    tr = [sum((A.products[k][j][j] for j in range(n)), A.field.zero) for k in range(n)]
    gram = [[sum((x * tr[k] for k, x in A._sparse[a][b]), A.field.zero) for b in range(n)] for a in range(n)]
    return kernel_basis(Matrix._raw(A.field, gram, n))


def _annihilator_of_factors(A: Algebra, factors: list[list[Matrix]]) -> Subspace:
    n = A.dim
    rows = []
    for fac in factors:
        flats = [m.flat() for m in fac]
        for r in range(len(flats[0]) if flats else 0):
            rows.append([flats[m][r] for m in range(n)])
    if not rows:
        return Subspace.whole(A.field, n)
    return kernel_basis(Matrix._raw(A.field, rows, n))


def radical(A: Algebra, char_p_fallback: bool | None = None) -> Subspace:
    """Jacobson radical of ``A``."""
    if char_p_fallback is None:
        char_p_fallback = settings().char_p_fallback
    p = A.field.characteristic
    if p == 0 or p > A.dim:
        key = ("radical", "trace")
        if key not in A._cache:
            A._cache[key] = _trace_radical(A)
        return A._cache[key]
    if not char_p_fallback:
        raise MethodInapplicable(f"trace form does not detect the radical in characteristic {p} "
                                 f"at dimension {A.dim}, and the fallback is disabled")
    key = ("radical", "modules")
    if key not in A._cache:
        factors = meataxe.composition_factors(A.left_basis_matrices, A.dim, A.field)
        A._cache[key] = _annihilator_of_factors(A, factors)
    return A._cache[key]


# ---------------------------------------------------------------- idempotents


_FIELD = "field"


def _candidates(B: Algebra, budget: int, seed: int = 0):
    n = B.dim
    for i in range(n):
        yield B.basis_vector(i)
    for i, j in itertools.combinations(range(n), 2):
        v = B.basis_vector(i)
        v[j] = B.field.one
        yield v
    rng = random.Random(seed)
    for _ in range(budget):
        yield [B.field.random(rng, -3, 3) for _ in range(n)]


def _idempotent_from_minpoly(B: Algebra, a, m: list) -> list | None:
    facs = poly.factor(m, B.field)
    if len(facs) < 2:
        return None
    f = poly.power(facs[0][0], facs[0][1], B.field)
    g = [B.field.one]
    for q, k in facs[1:]:
        g = poly.mul(g, poly.power(q, k, B.field), B.field)
    return B.evaluate(poly.crt_idempotent(f, g, B.field), a)


def _idempotent_in_left_ideal(B: Algebra, b, budget: int) -> list | None:
    L = B.subspace([B.mul(B.basis_vector(i), b) for i in range(B.dim)])
    rng = random.Random(1)
    cands = [list(r) for r in L.rows]
    cands += [L.combine([B.field.random(rng, -3, 3) for _ in range(L.dim)]) for _ in range(budget)]
    for y in cands:
        m = element_minpoly(B, y)
        e = _idempotent_from_minpoly(B, y, m)
        if e is not None:
            return e
    return None


def _berlekamp_split(B: Algebra):
    """For commutative semisimple ``B`` over GF(p): ``_FIELD`` or a nontrivial idempotent."""
    p = B.field.characteristic
    n = B.dim
    cols = [B.power(B.basis_vector(i), p) for i in range(n)]
    F = Matrix.from_columns(B.field, cols, n) - Matrix.identity(B.field, n)
    fixed = kernel_basis(F)
    if fixed.dim == 1:
        return _FIELD
    unit_line = Subspace(B.field, n, [B.unit])
    for v in fixed.rows:
        if not unit_line.contains(v):
            e = _idempotent_from_minpoly(B, v, element_minpoly(B, v))
            if e is not None:
                return e
    raise InternalConsistencyError("Frobenius fixed space did not split")


def _split_semisimple(B: Algebra):
    """A nontrivial idempotent of semisimple ``B``, ``_FIELD`` if ``B`` is a field, else ``None``."""
    n = B.dim
    if n == 1:
        return _FIELD
    budget = settings().split_budget
    for a in _candidates(B, budget):
        m = element_minpoly(B, a)
        facs = poly.factor(m, B.field)
        if len(facs) >= 2:
            return _idempotent_from_minpoly(B, a, m)
        (q, k), = facs
        if k == 1:
            if len(q) - 1 == n:
                return _FIELD
            if B.field.is_finite and B.is_commutative():
                return _berlekamp_split(B)
            continue
        e = _idempotent_in_left_ideal(B, B.evaluate(q, a), budget=20)
        if e is not None:
            return e
    if B.field.is_finite and B.is_commutative():
        return _berlekamp_split(B)
    return None


def _semisimple_primitive_idempotents(S: Algebra) -> list[list]:
    done = []
    stack = [list(S.unit)]
    while stack:
        e = stack.pop()
        C, emb = corner(S, e)
        res = _split_semisimple(C)
        if res is _FIELD:
            done.append(e)
            continue
        if res is None:
            raise InconclusiveError("could not split a corner algebra of the semisimple quotient",
                                    partial=done + stack + [e])
        eps = emb.combine(res)
        stack.append(S.sub(e, eps))
        stack.append(eps)
    return done


def lift_idempotent(A: Algebra, x, max_rounds: int | None = None) -> list:
    """Iterate ``x -> 3x^2 - 2x^3`` until ``x`` is idempotent (``x^2 - x`` must be nilpotent)."""
    rounds = max_rounds if max_rounds is not None else A.dim + 2
    three, two = A.field(3), A.field(2)
    for _ in range(rounds + 1):
        x2 = A.mul(x, x)
        if x2 == list(x):
            return list(x)
        x3 = A.mul(x2, x)
        x = [three * a - two * b for a, b in zip(x2, x3)]
    raise InternalConsistencyError("idempotent lifting did not converge")


def _idem_key(A: Algebra, e):
    first = next((i for i, x in enumerate(e) if x), A.dim)
    return (first, [A.field.sort_key(x) for x in e])


def primitive_idempotent_coords(A: Algebra) -> list[list]:
    if "prim" in A._cache:
        return A._cache["prim"]
    N = radical(A)
    Q = Quotient(A, N)
    ss = _semisimple_primitive_idempotents(Q.algebra)
    ss.sort(key=lambda e: _idem_key(A, Q.lift(e)))
    lifted = []
    acc = A.zero()
    for x in ss[:-1]:
        f = A.sub(A.unit, acc)
        y = A.mul3(f, Q.lift(x), f)
        e = lift_idempotent(A, y)
        lifted.append(e)
        acc = A.add(acc, e)
    lifted.append(A.sub(A.unit, acc))
    lifted.sort(key=lambda e: _idem_key(A, e))
    A._cache["prim"] = lifted
    return lifted


def primitive_idempotents(A: Algebra) -> list[AlgebraElement]:
    """A complete set of orthogonal primitive idempotents, ordered by leading coordinate."""
    return [A.element(e) for e in primitive_idempotent_coords(A)]


@dataclass(frozen=True)
class PimClass:
    idempotent: list
    proj_dim: int
    end_dim: int
    members: tuple[int, ...]


def pim_classes(A: Algebra) -> list[PimClass]:
    """Isomorphism classes of indecomposable projectives ``A e`` from the primitive set.

    ``e`` and ``f`` are equivalent when ``e A f`` is not inside the radical;
    ``end_dim`` is the dimension of the endomorphism ring of the simple top.
    """
    if "pims" in A._cache:
        return A._cache["pims"]
    prims = primitive_idempotent_coords(A)
    N = radical(A)
    basis = [A.basis_vector(i) for i in range(A.dim)]
    classes: list[list[int]] = []
    for idx, e in enumerate(prims):
        for cls in classes:
            f = prims[cls[0]]
            if any(not N.contains(A.mul3(f, b, e)) for b in basis):
                cls.append(idx)
                break
        else:
            classes.append([idx])
    out = []
    for cls in classes:
        e = prims[cls[0]]
        Ae = A.subspace([A.mul(b, e) for b in basis])
        eAe = A.subspace([A.mul3(e, b, e) for b in basis])
        eNe = A.subspace([A.mul3(e, r, e) for r in N.rows])
        out.append(PimClass(e, Ae.dim, eAe.dim - eNe.dim, tuple(cls)))
    A._cache["pims"] = out
    return out


# ---------------------------------------------------------------- verdicts


@dataclass
class IdempotentVerdict:
    """Outcome of a division or locality test.

    ``status`` is ``Division``/``NotDivision``/``Inconclusive`` for
    :func:`division_verdict` and ``Local``/``NotLocal``/``Inconclusive`` for
    :func:`local_verdict`.  A negative verdict always carries a witness.
    """

    status: str
    witness: AlgebraElement | None = None
    method: str = ""
    reason: str = ""


def _is_invertible(A: Algebra, u) -> bool:
    return A.right_matrix(u).rank() == A.dim


def _exhaustive_division(A: Algebra) -> IdempotentVerdict:
    elems = A.field.elements()
    for coords in itertools.product(elems, repeat=A.dim):
        if any(coords) and not _is_invertible(A, list(coords)):
            return IdempotentVerdict("NotDivision", A.element(coords), "exhaustive",
                                     "nonzero element with singular right-regular matrix")
    return IdempotentVerdict("Division", None, "exhaustive", "every nonzero element is invertible")


def division_verdict(D: Algebra, exhaustion_cap: int | None = None) -> IdempotentVerdict:
    if exhaustion_cap is None:
        exhaustion_cap = settings().exhaustion_cap
    N = radical(D)
    if N.dim:
        return IdempotentVerdict("NotDivision", D.element(N.rows[0]), "radical",
                                 "nonzero radical element is nilpotent")
    p = D.field.characteristic
    if p and p ** D.dim <= exhaustion_cap:
        return _exhaustive_division(D)
    res = _split_semisimple(D)
    if res is _FIELD:
        return IdempotentVerdict("Division", None, "generator",
                                 "an element with irreducible minimal polynomial generates the algebra")
    if res is not None:
        return IdempotentVerdict("NotDivision", D.element(res), "idempotent", "nontrivial idempotent")
    if p:
        raise InternalConsistencyError("semisimple algebra over a finite field was neither split nor a field")
    return IdempotentVerdict("Inconclusive", None, "search",
                             "no splitting element and no generating element found")


def local_verdict(D: Algebra) -> IdempotentVerdict:
    """``D`` is local when ``D/rad D`` is a division algebra."""
    N = radical(D)
    Q = Quotient(D, N)
    v = division_verdict(Q.algebra)
    if v.status == "Division":
        return IdempotentVerdict("Local", None, v.method, v.reason)
    if v.status == "Inconclusive":
        return IdempotentVerdict("Inconclusive", None, v.method, v.reason)
    # semisimple quotient, so the witness is a nontrivial idempotent up to a unit
    w = list(v.witness.coords)
    if Q.algebra.mul(w, w) != w:
        res = _split_semisimple(Q.algebra)
        if res is None or res is _FIELD:
            raise InternalConsistencyError("zero divisor without a splitting idempotent")
        w = res
    e = lift_idempotent(D, Q.lift(w))
    return IdempotentVerdict("NotLocal", D.element(e), v.method, "nontrivial idempotent survives modulo the radical")
