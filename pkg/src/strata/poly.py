"""Univariate polynomials over a :class:`~strata.exactla.Field`.

A polynomial is a list of coefficients, constant term first, with no
trailing zeros.  Arithmetic is done here; only irreducible factorisation is
delegated to sympy.
"""

from __future__ import annotations

from fractions import Fraction

from .exactla import Field, Mod


def trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(trim(p)) - 1


def add(p: list, q: list, field: Field) -> list:
    n = max(len(p), len(q))
    z = field.zero
    return trim([(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)])


def sub(p: list, q: list, field: Field) -> list:
    return add(p, [-c for c in q], field)


def mul(p: list, q: list, field: Field) -> list:
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def monic(p: list) -> list:
    p = trim(p)
    if not p:
        return p
    inv = 1 / p[-1] if not isinstance(p[-1], Mod) else p[-1] ** -1
    return [c * inv for c in p]


def divmod_(p: list, q: list, field: Field) -> tuple[list, list]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    quot = [field.zero] * max(len(r) - len(q) + 1, 1)
    lead = q[-1]
    while len(r) >= len(q):
        c = r[-1] / lead
        s = len(r) - len(q)
        quot[s] = c
        for i, b in enumerate(q):
            r[s + i] = r[s + i] - c * b
        r = trim(r)
    return trim(quot), r


def gcdext(p: list, q: list, field: Field) -> tuple[list, list, list]:
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        quo, rem = divmod_(r0, r1, field)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1, field), field)
        t0, t1 = t1, sub(t0, mul(quo, t1, field), field)
    if not r0:
        return [], s0, t0
    inv = field.one / r0[-1]
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def power(p: list, k: int, field: Field) -> list:
    out = [field.one]
    for _ in range(k):
        out = mul(out, p, field)
    return out


def crt_idempotent(f: list, g: list, field: Field) -> list:
    """The polynomial congruent to 1 modulo ``f`` and to 0 modulo ``g`` (coprime)."""
    h, _, t = gcdext(f, g, field)
    if h != [field.one]:
        raise ValueError("crt_idempotent needs coprime moduli")
    # s*f + t*g = 1, so t*g is 1 mod f and 0 mod g
    _, r = divmod_(mul(t, g, field), mul(f, g, field), field)
    return r


def factor(p: list, field: Field) -> list[tuple[list, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    import sympy

    p = trim(p)
    if len(p) <= 1:
        return []
    t = sympy.Symbol("t")
    if field.characteristic:
        P = sympy.Poly([int(c.v) for c in reversed(p)], t, modulus=field.characteristic)
    else:
        P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], t,
                       domain=sympy.QQ)
    _, facs = P.factor_list()
    out = []
    for fac, mult in facs:
        coeffs = fac.all_coeffs()
        if field.characteristic:
            conv = [field(int(c) % field.characteristic) for c in reversed(coeffs)]
        else:
            conv = [field(Fraction(int(sympy.numer(c)), int(sympy.denom(c)))) for c in reversed(coeffs)]
        out.append((monic(conv), mult))
    out.sort(key=lambda fm: (len(fm[0]), [field.sort_key(c) for c in fm[0]], fm[1]))
    return out
