"""Independent reference computations for the tests.

Algebras here are built by multiplying explicit matrices or polynomials,
and the brute-force checks enumerate every element of a small algebra over
a prime field.  None of this goes through the package's own solvers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from strata.algcore import Algebra


def matmul(X, Y):
    n = len(X)
    return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def matrix_unit(n, i, j):
    return [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)]


def algebra_from_matrices(field, mats, name=""):
    """The algebra spanned by ``mats`` (closed under products), coordinates read off entrywise."""
    n = len(mats[0])
    flat = [[m[r][c] for r in range(n) for c in range(n)] for m in mats]
    # each basis matrix is a 0/1 matrix unit here, so coordinates are read at its support
    support = [next(k for k, x in enumerate(v) if x) for v in flat]

    def coords(M):
        v = [M[r][c] for r in range(n) for c in range(n)]
        return [v[s] for s in support]

    prods = [[coords(matmul(a, b)) for b in mats] for a in mats]
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    return Algebra(field, len(mats), prods, coords(ident), name)


def upper_triangular(n, field):
    units = [(i, j) for i in range(n) for j in range(i, n)]
    return algebra_from_matrices(field, [matrix_unit(n, i, j) for i, j in units]), units


def full_matrix(n, field):
    units = [(i, j) for i in range(n) for j in range(n)]
    return algebra_from_matrices(field, [matrix_unit(n, i, j) for i, j in units]), units


def poly_quotient(modulus, field):
    """``k[x]/(modulus)`` on the basis ``1, x, ..., x^{d-1}``; ``modulus`` is monic, constant first."""
    d = len(modulus) - 1

    def reduce(c):
        c = list(c) + [0] * max(0, d - len(c))
        for top in range(len(c) - 1, d - 1, -1):
            lead = c[top]
            if lead:
                for t in range(d + 1):
                    c[top - d + t] -= lead * modulus[t]
        return c[:d]

    prods = []
    for i in range(d):
        row = []
        for j in range(d):
            c = [0] * (i + j + 1)
            c[i + j] = 1
            row.append(reduce(c))
        prods.append(row)
    return Algebra(field, d, prods, [1] + [0] * (d - 1))


def truncated(n, field):
    return poly_quotient([0] * n + [1], field)


def group_algebra_cyclic(m, field):
    prods = [[[1 if k == (i + j) % m else 0 for k in range(m)] for j in range(m)] for i in range(m)]
    return Algebra(field, m, prods, [1] + [0] * (m - 1))


# ---------------------------------------------------------------- brute force over GF(p)


def elements(A):
    return [list(c) for c in itertools.product(A.field.elements(), repeat=A.dim)]


def is_zero(v):
    return not any(v)


def is_nilpotent(A, x):
    y = list(x)
    for _ in range(A.dim):
        y = A.mul(y, x)
    return is_zero(y) or is_zero(A.mul(y, y))


def brute_radical(A):
    """Every ``x`` such that ``a x`` is nilpotent for all ``a``."""
    els = elements(A)
    return [x for x in els if all(is_nilpotent(A, A.mul(a, x)) for a in els)]


def brute_division(A):
    els = elements(A)
    for x in els:
        if is_zero(x):
            continue
        if not any(A.mul(x, y) == A.unit for y in els):
            return False
    return True


def brute_idempotents(A):
    return [x for x in elements(A) if A.mul(x, x) == x]


def frac_matrix(rows):
    return [[Fraction(x) for x in r] for r in rows]


def _closure(module, seed_vectors, base=None):
    """All vectors of the submodule generated by ``base`` and ``seed_vectors``, by saturating a finite set."""
    F = module.field
    found = set(base) if base else {tuple(F.zero for _ in range(module.dim))}
    pending = [tuple(v) for v in seed_vectors]
    while pending:
        v = pending.pop()
        if v in found:
            continue
        # adjoin the line through v: the set stays closed under addition and scalars
        found |= {tuple(a + c * b for a, b in zip(w, v)) for w in found for c in F.elements()}
        pending.extend(tuple(X.apply(list(v))) for X in module.action)
    # the action is linear, so images of the adjoined generators suffice
    return frozenset(found)


def _log(size, q):
    k = 0
    while size > 1:
        size //= q
        k += 1
    return k


def brute_composition_dims(module):
    """Dimensions of the factors of a composition series found by exhaustive search over GF(p).

    Each step adjoins to the current submodule the cyclic piece of smallest
    size, which is a minimal submodule strictly above it.
    """
    F = module.field
    q = len(F.elements())
    everything = [tuple(v) for v in itertools.product(F.elements(), repeat=module.dim)]
    current = _closure(module, [])
    dims = []
    while len(current) < q ** module.dim:
        best = None
        for v in everything:
            if v not in current:
                bigger = _closure(module, [v], current)
                if best is None or len(bigger) < len(best):
                    best = bigger
        dims.append(_log(len(best) // len(current), q))
        current = best
    return sorted(dims)
