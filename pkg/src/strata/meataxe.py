"""Submodule search for matrix representations (Norton's irreducibility test).

A representation is given by a list of square matrices spanning the image of
the algebra, acting on column vectors.  :func:`find_submodule` returns a
proper nonzero invariant subspace, or ``None`` once irreducibility has been
certified, and raises :class:`InconclusiveError` if its budget runs out.
"""

from __future__ import annotations

import random

from . import poly
from .errors import InconclusiveError, InternalConsistencyError
from .exactla import EchelonBasis, Field, Matrix, Subspace, kernel_basis


def matrix_minpoly(M: Matrix) -> list:
    field = M.field
    n = M.nrows
    eb = EchelonBasis(field, n * n, track=True)
    P = Matrix.identity(field, n)
    while True:
        rel = eb.add(P.flat())
        if rel is not True:
            return poly.trim(rel)
        P = P @ M


def poly_at_matrix(p: list, M: Matrix) -> Matrix:
    n = M.nrows
    out = Matrix.zeros(M.field, n, n)
    for c in reversed(p):
        out = out @ M
        if c:
            out = out + Matrix.identity(M.field, n).scale(c)
    return out


def spin(vectors, gens: list[Matrix], field: Field, n: int) -> Subspace:
    eb = EchelonBasis(field, n)
    queue = []
    for v in vectors:
        if eb.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for g in gens:
            w = g.apply(v)
            if eb.add(w):
                queue.append(w)
                if len(eb) == n:
                    return Subspace.whole(field, n)
    return eb.subspace()


def restrict(gens: list[Matrix], sub: Subspace) -> list[Matrix]:
    field = sub.field
    out = []
    for g in gens:
        cols = []
        for r in sub.rows:
            c = sub.coordinates(g.apply(r))
            if c is None:
                raise InternalConsistencyError("subspace is not invariant")
            cols.append(c)
        out.append(Matrix.from_columns(field, cols, sub.dim))
    return out


def quotient(gens: list[Matrix], sub: Subspace) -> list[Matrix]:
    field = sub.field
    comp = sub.complement_indices()
    n = sub.ambient_dim
    out = []
    for g in gens:
        cols = []
        for c in comp:
            e = [field.zero] * n
            e[c] = field.one
            red = sub.reduce(g.apply(e))
            cols.append([red[j] for j in comp])
        out.append(Matrix.from_columns(field, cols, len(comp)))
    return out


def _candidates(gens: list[Matrix], field: Field, budget: int, seed: int):
    yield from gens
    rng = random.Random(seed)
    for _ in range(budget):
        acc = None
        for g in gens:
            c = field.random(rng, -3, 3)
            if c:
                acc = g.scale(c) if acc is None else acc + g.scale(c)
        if acc is not None:
            yield acc


def find_submodule(gens: list[Matrix], n: int, field: Field, budget: int = 200,
                   seed: int = 0) -> Subspace | None:
    if n <= 1:
        return None
    gensT = [g.transpose() for g in gens]
    for theta in _candidates(gens, field, budget, seed):
        for p, _ in poly.factor(matrix_minpoly(theta), field):
            pt = poly_at_matrix(p, theta)
            null = kernel_basis(pt)
            S = spin([null.rows[0]], gens, field, n)
            if S.dim < n:
                return S
            nullT = kernel_basis(pt.transpose())
            ST = spin([nullT.rows[0]], gensT, field, n)
            if ST.dim < n:
                return kernel_basis(ST.basis)
            if null.dim == len(p) - 1:
                return None
    raise InconclusiveError("submodule search exhausted its budget")


def composition_factors(gens: list[Matrix], n: int, field: Field) -> list[list[Matrix]]:
    """Action matrices of the composition factors, bottom of a series first."""
    if n == 0:
        return []
    sub = find_submodule(gens, n, field)
    if sub is None:
        return [gens]
    return (composition_factors(restrict(gens, sub), sub.dim, field)
            + composition_factors(quotient(gens, sub), n - sub.dim, field))
