"""Temperley-Lieb diagram algebras with their cellular-type diagram basis.

A diagram on ``n`` strands is a non-crossing perfect matching of ``2n``
points: ``0..n-1`` along the top and ``n..2n-1`` along the bottom.  Every
diagram is cut uniquely into a top half and a bottom half with the same
number of through strands, which gives the cell indexing.
"""

from __future__ import annotations

from functools import lru_cache

from .algcore import Algebra
from .cellsys import CellularDatum, Poset, from_cellular_basis
from .exactla import Field

MAX_STRANDS = 4


@lru_cache(maxsize=None)
def half_diagrams(n: int, defects: int) -> tuple[tuple, ...]:
    """Non-crossing half diagrams: tuples with ``partner[p]`` or -1 for a defect.

    Defects may not sit under a cup, so the points between two cup ends are
    themselves fully matched.
    """
    out = []

    def build(pos: int, partner: list, open_cups: list, free: int):
        if pos == n:
            if not open_cups and free == defects:
                out.append(tuple(partner))
            return
        remaining = n - pos
        # defect: allowed only outside every open cup
        if not open_cups and free < defects:
            partner[pos] = -1
            build(pos + 1, partner, open_cups, free + 1)
        # open a new cup
        if len(open_cups) + 1 <= remaining - 1:
            partner[pos] = None
            build(pos + 1, partner, open_cups + [pos], free)
        # close the innermost cup
        if open_cups:
            q = open_cups[-1]
            partner[pos] = q
            partner[q] = pos
            build(pos + 1, partner, open_cups[:-1], free)
            partner[q] = None
        partner[pos] = None

    build(0, [None] * n, [], 0)
    return tuple(sorted(out))


def defect_counts(n: int) -> list[int]:
    """Possible numbers of through strands, largest first."""
    return list(range(n, -1, -2))


def glue(n: int, top: tuple, bottom: tuple) -> tuple:
    """The full matching with the given halves, defects joined left to right."""
    m = [0] * (2 * n)
    for p, q in enumerate(top):
        if q >= 0:
            m[p] = q
    for p, q in enumerate(bottom):
        if q >= 0:
            m[n + p] = n + q
    tops = [p for p, q in enumerate(top) if q < 0]
    bots = [p for p, q in enumerate(bottom) if q < 0]
    for a, b in zip(tops, bots):
        m[a] = n + b
        m[n + b] = a
    return tuple(m)


def compose(n: int, a: tuple, b: tuple) -> tuple[tuple, int]:
    """Stack ``a`` above ``b``; return the resulting matching and the number of closed loops."""
    result = [0] * (2 * n)
    seen_mid = [False] * n

    def walk(diagram: str, point: int) -> tuple[str, int]:
        # from an endpoint, follow strands through the middle row until leaving
        while True:
            if diagram == "a":
                q = a[point]
                if q < n:
                    return "top", q
                k = q - n
                seen_mid[k] = True
                diagram, point = "b", k
            else:
                q = b[point]
                if q >= n:
                    return "bottom", q - n
                seen_mid[q] = True
                diagram, point = "a", n + q

    for p in range(n):
        side, q = walk("a", p)
        result[p] = q if side == "top" else n + q
    for p in range(n):
        side, q = walk("b", n + p)
        result[n + p] = q if side == "top" else n + q
    loops = 0
    for k in range(n):
        if seen_mid[k]:
            continue
        loops += 1
        point = k
        while True:
            seen_mid[point] = True
            q = b[point]  # b's top row is the middle row; loops stay inside it
            seen_mid[q] = True
            point = a[n + q] - n
            if seen_mid[point]:
                break
    return tuple(result), loops


def cells(n: int) -> list[tuple[int, int, int]]:
    """``(defects, i, j)`` for every diagram, most through strands first."""
    out = []
    for t in defect_counts(n):
        halves = half_diagrams(n, t)
        for i in range(len(halves)):
            for j in range(len(halves)):
                out.append((t, i, j))
    return out


def label(defects: int) -> str:
    return f"t{defects}"


def temperley_lieb(n: int, delta, field: Field) -> tuple[Algebra, CellularDatum]:
    """``TL_n(delta)`` on the diagram basis, together with its diagram cellular system."""
    if not 1 <= n <= MAX_STRANDS:
        raise ValueError(f"Temperley-Lieb algebras are supported for 1 <= n <= {MAX_STRANDS}")
    delta = field(delta)
    index = cells(n)
    diagrams = [glue(n, half_diagrams(n, t)[i], half_diagrams(n, t)[j]) for t, i, j in index]
    position = {d: k for k, d in enumerate(diagrams)}
    sc = {}
    for x, dx in enumerate(diagrams):
        for y, dy in enumerate(diagrams):
            prod, loops = compose(n, dx, dy)
            sc[(x, y, position[prod])] = delta ** loops
    identity = tuple(list(range(n, 2 * n)) + list(range(n)))
    unit = [field.zero] * len(index)
    unit[position[identity]] = field.one
    A = Algebra.from_structure_constants(field, len(index), sc, unit, name=f"TL{n}({field.format(delta)})")
    labels = [label(t) for t in defect_counts(n)]
    # fewer through strands generate a smaller ideal, hence a larger label
    relations = [(labels[r + 1], labels[r]) for r in range(len(labels) - 1)]
    poset = Poset(labels, relations)
    cell_vectors: dict[str, dict] = {lab: {} for lab in labels}
    for k, (t, i, j) in enumerate(index):
        v = [field.zero] * len(index)
        v[k] = field.one
        cell_vectors[label(t)][(i, j)] = v
    S = from_cellular_basis(A, poset, cell_vectors, name="diagram")
    return A, S
