"""Built-in example algebras with their cellular systems, text file formats and basis changes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path

from . import tl
from .algcore import Algebra, algebra_verify
from .cellsys import CellularDatum, Layer, Poset, chain_poset, datum_transport, ground_algebra
from .errors import AxiomViolation, ParseError
from .exactla import QQ, GF, Field, Matrix, Subspace

# ---------------------------------------------------------------- reading


class _Reader:
    """Line-oriented token reader that reports 1-based line and column numbers."""

    def __init__(self, text: str, what: str):
        self.what = what
        self.lines = []
        for no, line in enumerate(text.split("\n"), start=1):
            toks = []
            col = 0
            for part in line.split(" "):
                if part:
                    toks.append((part, col + 1))
                col += len(part) + 1
            if toks:
                self.lines.append((no, toks))
        self.pos = 0
        self.last_line = text.count("\n") + 1

    def eof_error(self, expected: str) -> ParseError:
        return ParseError(f"unexpected end of {self.what}, expected {expected!r}", self.last_line, 1)

    def at_end(self) -> bool:
        return self.pos >= len(self.lines)

    def peek(self) -> str | None:
        return None if self.at_end() else self.lines[self.pos][1][0][0]

    def starts(self, keywords: tuple) -> bool:
        if self.at_end():
            return False
        toks = self.lines[self.pos][1]
        return len(toks) >= len(keywords) and all(t[0] == k for t, k in zip(toks, keywords))

    def take(self, keyword: str | tuple, count: int | None = None) -> tuple[int, list]:
        """Consume a line starting with ``keyword``; return its line number and remaining tokens."""
        if self.at_end():
            raise self.eof_error(keyword if isinstance(keyword, str) else keyword[0])
        no, toks = self.lines[self.pos]
        kws = (keyword,) if isinstance(keyword, str) else keyword
        for n, kw in enumerate(kws):
            if n >= len(toks) or toks[n][0] != kw:
                col = toks[n][1] if n < len(toks) else toks[-1][1] + len(toks[-1][0]) + 1
                raise ParseError(f"expected {' '.join(kws)!r}", no, col)
        rest = toks[len(kws):]
        if count is not None and len(rest) != count:
            col = rest[count][1] if len(rest) > count else toks[-1][1] + len(toks[-1][0]) + 1
            raise ParseError(f"expected {count} values after {' '.join(kws)!r}, found {len(rest)}", no, col)
        self.pos += 1
        return no, rest

    def raw(self) -> tuple[int, list]:
        if self.at_end():
            raise self.eof_error("a data line")
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def finish(self) -> None:
        if not self.at_end():
            no, toks = self.lines[self.pos]
            raise ParseError("unexpected trailing content", no, toks[0][1])


def _int(tok, no: int, lo: int | None = 0) -> int:
    text, col = tok
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"expected an integer, found {text!r}", no, col) from None
    if lo is not None and v < lo:
        raise ParseError(f"expected an integer >= {lo}, found {v}", no, col)
    return v


def _scalar(F: Field, tok, no: int):
    text, col = tok
    try:
        return F.parse(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a scalar, found {text!r}", no, col) from None


def _scalars(F: Field, toks, no: int) -> list:
    return [_scalar(F, t, no) for t in toks]


def _fmt(F: Field, vec) -> str:
    return " ".join(F.format(F(x)) for x in vec)


def _read_field(r: _Reader) -> Field:
    no, rest = r.take("field")
    if len(rest) == 1 and rest[0][0] == "Q":
        return QQ
    if len(rest) == 2 and rest[0][0] == "GF":
        p = _int(rest[1], no, 2)
        try:
            return GF(p)
        except ValueError as exc:
            raise ParseError(str(exc), no, rest[1][1]) from None
    col = rest[0][1] if rest else 7
    raise ParseError("expected 'Q' or 'GF <p>'", no, col)


def _field_line(F: Field) -> str:
    return "field Q" if F.characteristic == 0 else f"field GF {F.characteristic}"


# ---------------------------------------------------------------- algebras


def _algebra_lines(A: Algebra, prefix: str = "") -> list[str]:
    F = A.field
    lines = [f"{prefix}dim {A.dim}", f"{prefix}unit {_fmt(F, A.unit)}".rstrip()]
    for i, j, k, x in sorted(A.structure_constants(), key=lambda t: t[:3]):
        lines.append(f"{prefix}sc {i} {j} {k} {F.format(x)}")
    return lines


def dump_algebra(A: Algebra) -> str:
    return "\n".join(["algebra v1", _field_line(A.field)] + _algebra_lines(A)) + "\n"


def _read_algebra_body(r: _Reader, F: Field, prefix: tuple = ()) -> Algebra:
    no, rest = r.take(prefix + ("dim",), 1)
    n = _int(rest[0], no, 1)
    no, rest = r.take(prefix + ("unit",), n)
    unit = _scalars(F, rest, no)
    sc = {}
    while r.starts(prefix + ("sc",)):
        no, rest = r.take(prefix + ("sc",), 4)
        i, j, k = (_int(t, no) for t in rest[:3])
        for t, v in zip(rest[:3], (i, j, k)):
            if v >= n:
                raise ParseError(f"index {v} out of range for dim {n}", no, t[1])
        if (i, j, k) in sc:
            raise ParseError(f"duplicate structure constant ({i},{j},{k})", no, rest[0][1])
        sc[(i, j, k)] = _scalar(F, rest[3], no)
    return Algebra.from_structure_constants(F, n, sc, unit)


def _check_algebra(A: Algebra, what: str) -> Algebra:
    rep = algebra_verify(A)
    if not rep.ok:
        raise AxiomViolation(f"{what}: {rep.summary()}", witness=rep)
    return A


def parse_algebra(text: str) -> Algebra:
    r = _Reader(text, "algebra file")
    r.take(("algebra", "v1"), 0)
    F = _read_field(r)
    A = _read_algebra_body(r, F)
    r.finish()
    return _check_algebra(A, "algebra")


def save_algebra(A: Algebra, path) -> None:
    Path(path).write_text(dump_algebra(A))


def load_algebra(path) -> Algebra:
    return parse_algebra(Path(path).read_text())


# ---------------------------------------------------------------- systems


def dump_system(S: CellularDatum) -> str:
    A = S.algebra
    F = A.field
    lines = ["system v1", "poset " + " ".join(S.poset.elements)]
    lines += [f"rel {a} > {b}" for a, b in S.poset.generators]
    for lam in S.poset.elements:
        L = S.layers[lam]
        lines.append(f"layer {lam}")
        lines += _algebra_lines(L.D, "D ")
        lines += [f"I {L.I}", f"J {L.J}"]
        for i in range(L.I):
            for j in range(L.J):
                lines.append(f"c {i} {j}")
                lines += [_fmt(F, col) for col in L.maps[(i, j)].columns()]
    return "\n".join(lines) + "\n"


def parse_system(text: str, A: Algebra) -> CellularDatum:
    """Read a system file over the algebra ``A``; shapes and layer algebras are checked."""
    F = A.field
    r = _Reader(text, "system file")
    r.take(("system", "v1"), 0)
    no, rest = r.take("poset")
    if not rest:
        raise ParseError("poset needs at least one label", no, 6)
    labels = [t[0] for t in rest]
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate poset label", no, rest[0][1])
    rels = []
    while r.peek() == "rel":
        no, toks = r.take("rel", 3)
        if toks[1][0] != ">":
            raise ParseError("expected '>'", no, toks[1][1])
        for t in (toks[0], toks[2]):
            if t[0] not in labels:
                raise ParseError(f"unknown label {t[0]!r}", no, t[1])
        rels.append((toks[0][0], toks[2][0]))
    try:
        poset = Poset(labels, rels)
    except ValueError as exc:
        raise ParseError(str(exc), no, 1) from None
    layers = {}
    while not r.at_end():
        no, toks = r.take("layer", 1)
        lam = toks[0][0]
        if lam not in labels:
            raise ParseError(f"unknown label {lam!r}", no, toks[0][1])
        if lam in layers:
            raise ParseError(f"layer {lam!r} given twice", no, toks[0][1])
        D = _read_algebra_body(r, F, ("D",))
        d = D.dim
        no, t = r.take("I", 1)
        I = _int(t[0], no, 1)
        no, t = r.take("J", 1)
        J = _int(t[0], no, 1)
        maps = {}
        for i in range(I):
            for j in range(J):
                no, t = r.take("c", 2)
                got = (_int(t[0], no), _int(t[1], no))
                if got != (i, j):
                    raise ParseError(f"expected map c {i} {j}", no, t[0][1])
                cols = []
                for _ in range(d):
                    no, toks = r.raw()
                    if len(toks) != A.dim:
                        raise ParseError(f"expected {A.dim} scalars, found {len(toks)}", no, toks[0][1])
                    cols.append(_scalars(F, toks, no))
                maps[(i, j)] = Matrix.from_columns(F, cols, A.dim)
        layers[lam] = Layer(lam, D, I, J, maps)
    missing = [lam for lam in labels if lam not in layers]
    if missing:
        raise r.eof_error(f"layer {missing[0]}")
    for lam, L in layers.items():
        _check_algebra(L.D, f"layer {lam} algebra")
    return CellularDatum(A, poset, layers)


def save_system(S: CellularDatum, path) -> None:
    Path(path).write_text(dump_system(S))


def load_system(path, A: Algebra) -> CellularDatum:
    return parse_system(Path(path).read_text(), A)


# ---------------------------------------------------------------- chains and certificates


def _chain_lines(F: Field, chain) -> list[str]:
    lines = [f"steps {len(chain.ideals)}"]
    for k, J in enumerate(chain.ideals):
        lines.append(f"step {k + 1} dim {J.dim}")
        lines += [f"row {_fmt(F, row)}" for row in J.rows]
        if chain.witnesses and chain.witnesses[k] is not None:
            lines.append(f"idempotent {_fmt(F, chain.witnesses[k])}")
    return lines


def _read_chain(r: _Reader, F: Field, n: int):
    from .chains import IdealChain
    no, t = r.take("steps", 1)
    m = _int(t[0], no, 1)
    ideals, wits = [], []
    for k in range(m):
        no, t = r.take("step", 3)
        if _int(t[0], no) != k + 1 or t[1][0] != "dim":
            raise ParseError(f"expected 'step {k + 1} dim <d>'", no, t[0][1])
        d = _int(t[2], no, 1)
        rows = []
        for _ in range(d):
            no, t = r.take("row", n)
            rows.append(_scalars(F, t, no))
        J = Subspace(F, n, rows)
        if J.dim != d or J.rows != rows:
            raise ParseError(f"rows of step {k + 1} are not a reduced echelon basis", no, 1)
        ideals.append(J)
        if r.peek() == "idempotent":
            no, t = r.take("idempotent", n)
            wits.append(_scalars(F, t, no))
        else:
            wits.append(None)
    return IdealChain(ideals, wits if any(w is not None for w in wits) else None)


def dump_chain(A: Algebra, chain) -> str:
    F = A.field
    return "\n".join(["chain v1", _field_line(F), f"dim {A.dim}"] + _chain_lines(F, chain)) + "\n"


def parse_chain(text: str, A: Algebra | None = None):
    r = _Reader(text, "chain file")
    r.take(("chain", "v1"), 0)
    F = _read_field(r)
    no, t = r.take("dim", 1)
    n = _int(t[0], no, 1)
    if A is not None and (A.dim != n or A.field != F):
        raise ParseError("chain does not match the algebra's field and dimension", no, t[0][1])
    chain = _read_chain(r, F, n)
    r.finish()
    return chain


def save_chain(A: Algebra, chain, path) -> None:
    Path(path).write_text(dump_chain(A, chain))


def load_chain(path, A: Algebra | None = None):
    return parse_chain(Path(path).read_text(), A)


def dump_certificate(cert, A: Algebra | None = None) -> str:
    lines = ["certificate v1", f"claim {cert.claim.value}", f"subject-hash {cert.subject_hash}",
             f"field {cert.field}"]
    for key in sorted(cert.search):
        lines.append(f"search {key} {cert.search[key]}")
    if cert.chain is not None:
        F = cert.chain.ideals[0].field
        lines.append(f"dim {cert.chain.ideals[0].ambient_dim}")
        lines += _chain_lines(F, cert.chain)
    if cert.system_text is not None:
        lines.append("system-begin")
        lines += cert.system_text.rstrip("\n").split("\n")
        lines.append("system-end")
    lines += [f"note {n}" for n in cert.notes]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str):
    from .chains import Certificate, Claim
    r = _Reader(text, "certificate file")
    r.take(("certificate", "v1"), 0)
    no, t = r.take("claim", 1)
    try:
        claim = Claim(t[0][0])
    except ValueError:
        raise ParseError(f"unknown claim {t[0][0]!r}", no, t[0][1]) from None
    no, t = r.take("subject-hash", 1)
    h = t[0][0]
    no, t = r.take("field")
    text_field = " ".join(x[0] for x in t)
    if text_field == "Q":
        F = QQ
    elif text_field.startswith("GF(") and text_field.endswith(")") and text_field[3:-1].isdigit():
        F = GF(int(text_field[3:-1]))
    else:
        raise ParseError(f"unknown field {text_field!r}", no, t[0][1] if t else 7)
    cert = Certificate(claim, h, str(F))
    while r.peek() == "search":
        no, t = r.take("search", 2)
        v = t[1][0]
        cert.search[t[0][0]] = int(v) if v.lstrip("-").isdigit() else v
    if r.peek() == "dim":
        no, t = r.take("dim", 1)
        cert.chain = _read_chain(r, F, _int(t[0], no, 1))
    if r.peek() == "system-begin":
        r.take("system-begin", 0)
        body = []
        while True:
            if r.at_end():
                raise r.eof_error("system-end")
            if r.peek() == "system-end":
                r.take("system-end", 0)
                break
            no, toks = r.raw()
            body.append(" ".join(x[0] for x in toks))
        cert.system_text = "\n".join(body) + "\n"
    while r.peek() == "note":
        no, toks = r.lines[r.pos]
        line = text.split("\n")[no - 1]
        cert.notes.append(line[line.index("note") + 5:])
        r.pos += 1
    r.finish()
    return cert


def save_certificate(cert, path) -> None:
    Path(path).write_text(dump_certificate(cert))


def load_certificate(path):
    return parse_certificate(Path(path).read_text())


# ---------------------------------------------------------------- built-in corpus


@dataclass
class CorpusEntry:
    """An algebra, named cellular systems on it and the verdicts they are expected to produce.

    ``expected`` holds ``dim``, ``qh``, ``simples`` and per-system data under
    ``systems``: layer shapes ``(I, J, dim D)``, irreducible labels, and
    whether the system is full, divisible, certifies quasi-heredity and
    certifies a standard stratification.  ``broken`` systems are deliberately
    invalid and ``expected['broken']`` names their first witness.
    """

    name: str
    algebra: Algebra
    systems: dict[str, CellularDatum]
    expected: dict
    broken: dict[str, CellularDatum] = dc_field(default_factory=dict)


CATALOG = (
    "upper_triangular.2.Q",
    "upper_triangular.3.Q",
    "matrix.2.Q",
    "matrix.2.GF3",
    "truncated_poly.2.Q",
    "truncated_poly.2.GF2",
    "temperley_lieb.3.2.Q",
    "group_cyclic.2.GF2",
    "group_cyclic.3.Q",
    "temperley_lieb.4.0.Q",
)


def _field_token(tok: str) -> Field:
    if tok == "Q":
        return QQ
    if tok.startswith("GF") and tok[2:].isdigit():
        return GF(int(tok[2:]))
    raise ValueError(f"unknown field {tok!r}; use Q or GF<p>")


def _field_name(F: Field) -> str:
    return "Q" if F.characteristic == 0 else f"GF{F.characteristic}"


def _unit_vector(F: Field, n: int, k: int) -> list:
    v = [F.zero] * n
    v[k] = F.one
    return v


def _matrix_units(n: int, F: Field, upper: bool) -> tuple[Algebra, list[tuple[int, int]]]:
    idx = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
    pos = {p: k for k, p in enumerate(idx)}
    sc = {}
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k:
                sc[(a, b, pos[(i, l)])] = 1
    unit = [1 if i == j else 0 for i, j in idx]
    kind = "T" if upper else "M"
    return Algebra.from_structure_constants(F, len(idx), sc, unit, name=f"{kind}{n}({F})"), idx


def _basis_datum(A: Algebra, poset: Poset, cells: dict, name: str) -> CellularDatum:
    """A ``D = k`` datum from basis indices ``cells[lam][(i, j)] = k`` without validating it."""
    F = A.field
    k = ground_algebra(F)
    layers = {}
    for lam, entries in cells.items():
        I = 1 + max(i for i, _ in entries)
        J = 1 + max(j for _, j in entries)
        maps = {ij: Matrix.from_columns(F, [_unit_vector(F, A.dim, b)], A.dim) for ij, b in entries.items()}
        layers[lam] = Layer(lam, k, I, J, maps)
    return CellularDatum(A, poset, layers, name)


def _local_datum(A: Algebra, label: str = "l") -> CellularDatum:
    """One layer with ``D = A`` and ``c = id``."""
    I = Matrix.identity(A.field, A.dim)
    return CellularDatum(A, Poset([label]), {label: Layer(label, A, 1, 1, {(0, 0): I})}, "local")


def _layers(datum_shape: dict) -> dict:
    return {lam: tuple(v) for lam, v in datum_shape.items()}


def _heredity_system(A: Algebra) -> CellularDatum:
    from .chains import decide_qh_bounded, system_from_heredity_chain
    cert = decide_qh_bounded(A)
    return system_from_heredity_chain(A, cert.chain, name="heredity")


def _upper_triangular(n: int, F: Field) -> CorpusEntry:
    A, idx = _matrix_units(n, F, upper=True)
    pos = {p: k for k, p in enumerate(idx)}
    labels = [f"l{r + 1}" for r in range(n)]
    cells = {labels[r]: {(0, j): pos[(r, r + j)] for j in range(n - r)} for r in range(n)}
    hand = _basis_datum(A, chain_poset(labels), cells, "hand")
    shapes = {labels[r]: (1, n - r, 1) for r in range(n)}
    systems = {"hand": hand, "heredity": _heredity_system(A)}
    sys_exp = {
        "hand": _sys_expect(shapes, labels, full=True, divisible=True, qh=True, strat=True),
        "heredity": _sys_expect({f"s{r + 1}": (1, n - r, 1) for r in range(n)},
                                [f"s{r + 1}" for r in range(n)], full=True, divisible=True, qh=True, strat=True),
    }
    expected = {"dim": n * (n + 1) // 2, "qh": True, "simples": n, "systems": sys_exp}
    broken = {}
    if n == 2:
        # second layer mapped onto E12, which the first layer already uses
        broken["collision"] = _basis_datum(A, chain_poset(labels),
                                           {"l1": cells["l1"], "l2": {(0, 0): pos[(0, 1)]}}, "collision")
        # order reversed: span{E22} is not an ideal
        broken["wrong_order"] = _basis_datum(A, chain_poset(["l2", "l1"]), cells, "wrong_order")
        expected["broken"] = {"collision": ("l2", 0, 0), "wrong_order": ("l2", 1, "left", "l2", 0, 0)}
    return CorpusEntry(f"upper_triangular.{n}.{_field_name(F)}", A, systems, expected, broken)


def _matrix(n: int, F: Field) -> CorpusEntry:
    A, idx = _matrix_units(n, F, upper=False)
    pos = {p: k for k, p in enumerate(idx)}
    units = _basis_datum(A, Poset(["l"]), {"l": {(i, j): pos[(i, j)] for i in range(n) for j in range(n)}},
                         "matrix-units")
    systems = {"matrix-units": units, "heredity": _heredity_system(A)}
    sys_exp = {
        "matrix-units": _sys_expect({"l": (n, n, 1)}, ["l"], True, True, True, True),
        "heredity": _sys_expect({"s1": (n, n, 1)}, ["s1"], True, True, True, True),
    }
    return CorpusEntry(f"matrix.{n}.{_field_name(F)}", A, systems,
                       {"dim": n * n, "qh": True, "simples": 1, "systems": sys_exp})


def _truncated_poly(n: int, F: Field) -> CorpusEntry:
    sc = {(i, j, i + j): 1 for i in range(n) for j in range(n) if i + j < n}
    A = Algebra.from_structure_constants(F, n, sc, _unit_vector(F, n, 0), name=f"k[x]/(x^{n})({F})")
    # layer l1 is x^(n-1), the largest; lower powers follow
    labels = [f"l{r + 1}" for r in range(n)]
    divisible = _basis_datum(A, chain_poset(labels), {labels[r]: {(0, 0): n - 1 - r} for r in range(n)},
                             "divisible")
    systems = {"divisible": divisible, "local": _local_datum(A)}
    sys_exp = {
        # only the last layer (spanned by 1) squares into itself
        "divisible": _sys_expect({lam: (1, 1, 1) for lam in labels}, [labels[-1]], full=(n == 1),
                                 divisible=True, qh=(n == 1), strat=(n == 1)),
        "local": _sys_expect({"l": (1, 1, n)}, ["l"], True, n == 1, n == 1, True),
    }
    return CorpusEntry(f"truncated_poly.{n}.{_field_name(F)}", A, systems,
                       {"dim": n, "qh": n == 1, "simples": 1, "systems": sys_exp})


def _xm_minus_one_factors(m: int, F: Field) -> int:
    import sympy
    x = sympy.Symbol("x")
    kw = {"modulus": F.characteristic} if F.characteristic else {"domain": "QQ"}
    return len(sympy.Poly(x ** m - 1, x, **kw).factor_list()[1])


def _group_cyclic(m: int, F: Field) -> CorpusEntry:
    sc = {(i, j, (i + j) % m): 1 for i in range(m) for j in range(m)}
    A = Algebra.from_structure_constants(F, m, sc, _unit_vector(F, m, 0), name=f"kC{m}({F})")
    p = F.characteristic
    semisimple = p == 0 or m % p != 0
    simples = _xm_minus_one_factors(m, F)
    systems = {"local": _local_datum(A)}
    sys_exp = {"local": _sys_expect({"l": (1, 1, m)}, ["l"], True, m == 1, m == 1, True)}
    return CorpusEntry(f"group_cyclic.{m}.{_field_name(F)}", A, systems,
                       {"dim": m, "qh": semisimple, "simples": simples, "systems": sys_exp})


def _temperley_lieb(n: int, delta, F: Field) -> CorpusEntry:
    A, S = tl.temperley_lieb(n, delta, F)
    delta = F(delta)
    shapes = {}
    irr = []
    for t in tl.defect_counts(n):
        h = len(tl.half_diagrams(n, t))
        shapes[tl.label(t)] = (h, h, 1)
        # with no through strands every pairing closes at least one loop
        if t > 0 or delta != 0:
            irr.append(tl.label(t))
    full = len(irr) == len(shapes)
    order = [lam for lam in S.order if lam in irr]
    sys_exp = {"diagram": _sys_expect(shapes, order, full, True, full, full)}
    return CorpusEntry(f"temperley_lieb.{n}.{F.format(delta)}.{_field_name(F)}", A, {"diagram": S},
                       {"dim": A.dim, "qh": full, "simples": len(irr), "systems": sys_exp})


def _sys_expect(shapes, irr, full, divisible, qh, strat) -> dict:
    return {"layers": _layers(shapes), "irr": list(irr), "full": full, "divisible": divisible,
            "qh_certified": qh, "stratified_certified": strat}


FAMILIES = ("matrix", "upper_triangular", "truncated_poly", "group_cyclic", "temperley_lieb")
_LIMITS = {"matrix": 3, "upper_triangular": 4, "truncated_poly": 6, "group_cyclic": 6,
           "temperley_lieb": tl.MAX_STRANDS}


def parse_name(name: str) -> tuple[str, tuple]:
    """``family.n[.delta].field`` into the family and its parameters."""
    parts = name.split(".")
    family = parts[0]
    if family not in FAMILIES:
        raise ValueError(f"unknown corpus family {family!r}; known: {', '.join(FAMILIES)}")
    want = 4 if family == "temperley_lieb" else 3
    if len(parts) != want:
        shape = "temperley_lieb.<n>.<delta>.<field>" if want == 4 else f"{family}.<n>.<field>"
        raise ValueError(f"corpus name {name!r} should look like {shape}")
    try:
        n = int(parts[1])
    except ValueError:
        raise ValueError(f"size {parts[1]!r} is not an integer") from None
    if not 1 <= n <= _LIMITS[family]:
        raise ValueError(f"{family} supports sizes 1..{_LIMITS[family]}")
    F = _field_token(parts[-1])
    if family == "temperley_lieb":
        try:
            delta = F.parse(parts[2])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"delta {parts[2]!r} is not a scalar") from None
        return family, (n, delta, F)
    return family, (n, F)


@lru_cache(maxsize=None)
def builtin(name: str) -> CorpusEntry:
    """A corpus entry by name, e.g. ``upper_triangular.2.Q`` or ``temperley_lieb.3.2.Q``."""
    family, params = parse_name(name)
    build = {"matrix": _matrix, "upper_triangular": _upper_triangular, "truncated_poly": _truncated_poly,
             "group_cyclic": _group_cyclic, "temperley_lieb": _temperley_lieb}[family]
    return build(*params)


def corpus() -> list[CorpusEntry]:
    return [builtin(name) for name in CATALOG]


# ---------------------------------------------------------------- basis changes


def change_basis(A: Algebra, P: Matrix, name: str = "") -> tuple[Algebra, Matrix]:
    """The algebra on the basis given by the columns of the invertible ``P``, and ``P^-1``."""
    F = A.field
    n = A.dim
    if P.shape != (n, n) or P.rank() != n:
        raise ValueError("change of basis matrix is not invertible")
    P_inv = P.inverse()
    cols = P.columns()
    prods = [[P_inv.apply(A.mul(cols[a], cols[b])) for b in range(n)] for a in range(n)]
    return Algebra(F, n, prods, P_inv.apply(A.unit), name or A.name), P_inv


def transport_entry(entry: CorpusEntry, P: Matrix, name: str = "") -> CorpusEntry:
    A2, P_inv = change_basis(entry.algebra, P, name)
    move = {key: datum_transport(S, A2, P_inv) for key, S in entry.systems.items()}
    broken = {key: datum_transport(S, A2, P_inv) for key, S in entry.broken.items()}
    return CorpusEntry(name or entry.name, A2, move, entry.expected, broken)


def random_invertible(F: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        P = Matrix(F, [[F.random(rng, -2, 2) for _ in range(n)] for _ in range(n)])
        if P.rank() == n:
            return P


def random_basis_change(entry: CorpusEntry, seed: int) -> CorpusEntry:
    """Deterministic per ``seed``; entries in ``-2..2`` over Q and uniform over GF(p)."""
    rng = random.Random(seed)
    P = random_invertible(entry.algebra.field, entry.algebra.dim, rng)
    return transport_entry(entry, P, f"{entry.name}~{seed}")


def emit(entry: CorpusEntry, directory) -> list[Path]:
    """Write the algebra and every system of ``entry`` into ``directory``; return the paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / "algebra.txt"]
    save_algebra(entry.algebra, written[0])
    for key, S in list(entry.systems.items()) + list(entry.broken.items()):
        p = out / f"system-{key}.txt"
        save_system(S, p)
        written.append(p)
    return written
