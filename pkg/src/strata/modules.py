"""Finite-dimensional modules given by action matrices on a basis of the algebra."""

from __future__ import annotations

import random

from . import meataxe
from .algcore import Algebra, pim_classes, radical
from .errors import DimensionMismatch, InternalConsistencyError
from .exactla import EchelonBasis, Matrix, Subspace, kernel_basis


class AModule:
    """A left or right module over ``algebra``.

    ``action[m]`` is the matrix of ``v -> e_m . v`` (left) or ``v -> v . e_m``
    (right) on column vectors.
    """

    def __init__(self, algebra: Algebra, action: list[Matrix], side: str = "left", name: str = "",
                 ambient: Subspace | None = None):
        if side not in ("left", "right"):
            raise ValueError(f"side must be left or right, not {side!r}")
        if len(action) != algebra.dim:
            raise DimensionMismatch("one action matrix per algebra basis element is required")
        self.algebra = algebra
        self.action = action
        self.side = side
        self.name = name
        self.ambient = ambient
        self.dim = action[0].nrows if action else 0
        self.field = algebra.field

    def act(self, a) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for c, m in zip(a, self.action):
            if c:
                out = out + m.scale(c)
        return out

    def apply(self, a, v) -> list:
        return self.act(a).apply(v)

    def verify(self) -> list[str]:
        """Violations of the module axioms (empty when the action is a representation)."""
        A = self.algebra
        bad = []
        if self.act(A.unit) != Matrix.identity(self.field, self.dim):
            bad.append("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                prod = self.act(A.products[i][j])
                if self.side == "left":
                    comp = self.action[i] @ self.action[j]
                else:
                    comp = self.action[j] @ self.action[i]
                if prod != comp:
                    bad.append(f"action of e_{i}*e_{j} is not the composite")
        return bad

    def spin(self, vectors) -> Subspace:
        return meataxe.spin(vectors, self.action, self.field, self.dim)

    def submodule(self, sub: Subspace, name: str = "") -> AModule:
        return AModule(self.algebra, meataxe.restrict(self.action, sub), self.side, name)

    def quotient(self, sub: Subspace, name: str = "") -> AModule:
        return AModule(self.algebra, meataxe.quotient(self.action, sub), self.side, name)

    def is_submodule(self, sub: Subspace) -> bool:
        return all(sub.contains(m.apply(r)) for m in self.action for r in sub.rows)

    def dual(self) -> AModule:
        """``Hom_k(M, k)`` on the opposite side, ``(a.phi)(v) = phi(v.a)`` and symmetrically."""
        return AModule(self.algebra, [m.transpose() for m in self.action],
                       "left" if self.side == "right" else "right", f"{self.name}*" if self.name else "")

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<{self.side} module{label} of dim {self.dim}>"


def regular_module(A: Algebra, side: str = "left") -> AModule:
    mats = A.left_basis_matrices if side == "left" else A.right_basis_matrices
    return AModule(A, list(mats), side, "A")


def ideal_module(A: Algebra, J: Subspace, side: str = "left", name: str = "") -> AModule:
    """A left (or right) ideal ``J`` of ``A`` viewed as a module; its basis is ``rref(J)``."""
    M = regular_module(A, side).submodule(J, name)
    M.ambient = J
    return M


class HomSpace:
    def __init__(self, basis: list[Matrix], source: AModule, target: AModule):
        self.basis = basis
        self.source = source
        self.target = target

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> Matrix:
        out = Matrix.zeros(self.source.field, self.target.dim, self.source.dim)
        for c, m in zip(coeffs, self.basis):
            if c:
                out = out + m.scale(c)
        return out


def hom_space(M: AModule, N: AModule) -> HomSpace:
    """All ``T`` with ``T . rho_M(a) = rho_N(a) . T``; each ``T`` is ``dim N x dim M``."""
    if M.algebra.dim != N.algebra.dim or M.side != N.side:
        raise DimensionMismatch("modules over different algebras or sides")
    m, n = M.dim, N.dim
    f = M.field
    nv = n * m
    eq = EchelonBasis(f, nv)
    for a in range(M.algebra.dim):
        Ma, Na = M.action[a].rows, N.action[a].rows
        for r in range(n):
            for c in range(m):
                row = [f.zero] * nv
                for k in range(m):
                    x = Ma[k][c]
                    if x:
                        row[r * m + k] = row[r * m + k] + x
                for k in range(n):
                    x = Na[r][k]
                    if x:
                        row[k * m + c] = row[k * m + c] - x
                if any(row):
                    eq.add(row)
                if len(eq) == nv:
                    return HomSpace([], M, N)
    K = kernel_basis(Matrix._raw(f, eq.rows, nv)) if eq.rows else Subspace.whole(f, nv)
    basis = [Matrix._raw(f, [list(v[r * m:(r + 1) * m]) for r in range(n)], m) for v in K.rows]
    return HomSpace(basis, M, N)


def find_injection(M: AModule, N: AModule, avoid: Subspace | None = None, tries: int = 60,
                   seed: int = 0) -> Matrix | None:
    """An injective homomorphism ``M -> N`` whose image meets ``avoid`` trivially."""
    H = hom_space(M, N)
    if H.dim == 0:
        return None
    f = M.field
    rng = random.Random(seed)
    cands = list(H.basis)
    cands += [H.combine([f.random(rng, -3, 3) for _ in range(H.dim)]) for _ in range(tries)]
    for T in cands:
        if T.rank() != M.dim:
            continue
        img = Subspace(f, N.dim, T.columns())
        if avoid is None or (avoid & img).dim == 0:
            return T
    return None


def is_isomorphic(M: AModule, N: AModule) -> bool:
    if M.dim != N.dim:
        return False
    return find_injection(M, N) is not None


def module_radical(M: AModule) -> Subspace:
    """``rad(A) . M``."""
    N = radical(M.algebra)
    eb = EchelonBasis(M.field, M.dim)
    for r in N.rows:
        R = M.act(r)
        for c in R.columns():
            eb.add(c)
    return eb.subspace()


def top(M: AModule) -> AModule:
    return M.quotient(module_radical(M), f"top {M.name}" if M.name else "")


def projective_cover_dim(M: AModule) -> int:
    """Dimension of the projective cover of ``M``, from top multiplicities."""
    A = M.algebra
    if M.side == "right":
        A = A.opposite()
        M = AModule(A, M.action, "left", M.name)
    T = top(M)
    total = 0
    for cls in pim_classes(A):
        r = T.act(cls.idempotent).rank()
        if r % cls.end_dim:
            raise InternalConsistencyError("top multiplicity is not an integer")
        total += (r // cls.end_dim) * cls.proj_dim
    return total


def is_projective(M: AModule) -> bool:
    """A module is projective exactly when its projective cover has the same dimension."""
    return projective_cover_dim(M) == M.dim


def composition_factors(M: AModule) -> list[AModule]:
    return [AModule(M.algebra, gens, M.side) for gens in
            meataxe.composition_factors(M.action, M.dim, M.field)]
