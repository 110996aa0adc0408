"""Exact linear algebra over the rationals and prime fields.

Scalars are :class:`fractions.Fraction` over Q and :class:`Mod` over GF(p).
Vectors are plain lists of scalars.  Matrices act on column vectors, so a
linear map ``V -> W`` is stored as a ``dim W x dim V`` :class:`Matrix`.
Subspaces are kept in reduced row echelon form, which makes equality a
comparison of rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch


class Mod:
    """A residue modulo a prime, always normalised to ``0 <= v < p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) and GF({other.p}) mixed")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
            return Mod(pow(self.v, -1, self.p) ** (-k), self.p)
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (``characteristic == 0``) or a prime field GF(p)."""

    __slots__ = ("characteristic", "zero", "one")

    def __init__(self, characteristic: int):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"GF({characteristic}): modulus is not prime")
        self.characteristic = characteristic
        self.zero = self(0)
        self.one = self(1)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> int | None:
        return self.characteristic or None

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if type(x) is Fraction:
                return x
            if isinstance(x, Mod):
                raise FieldMismatch("GF(p) element used over Q")
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if type(x) is Mod:
            if x.p != p:
                raise FieldMismatch(f"GF({x.p}) element used over GF({p})")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ValueError(f"{x} has no image in GF({p})")
            return Mod(x.numerator * pow(x.denominator, -1, p), p)
        return Mod(int(x), p)

    def parse(self, token: str):
        """Read a scalar written as an integer or ``p/q``."""
        return self(Fraction(token))

    def format(self, x) -> str:
        if self.characteristic:
            return str(x.v)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def elements(self):
        if not self.characteristic:
            raise ValueError("the rationals are not enumerable as a finite field")
        return [Mod(v, self.characteristic) for v in range(self.characteristic)]

    def small_elements(self):
        """A short fixed list of scalars used by bounded searches."""
        if self.characteristic and self.characteristic <= 5:
            return self.elements()
        return [self(v) for v in (0, 1, -1)]

    def random(self, rng, lo: int = -2, hi: int = 2):
        if self.characteristic:
            return Mod(rng.randrange(self.characteristic), self.characteristic)
        return Fraction(rng.randint(lo, hi))

    def sort_key(self, x):
        return x.v if self.characteristic else x

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    __str__ = __repr__


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _check_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatch(f"{a} and {b} mixed")


def integer_form(F: Field, v: Sequence) -> tuple[list[int], int]:
    """Integer numerators over one denominator (Q) or residues (GF(p)) for a vector of scalars."""
    q = F.characteristic
    if q:
        try:
            return [x.v if x.p == q else F(x).v for x in v], 1
        except AttributeError:
            return [F(x).v for x in v], 1
    try:
        dens = [x.denominator for x in v]
    except AttributeError:
        v = [F(x) for x in v]
        dens = [x.denominator for x in v]
    d = math.lcm(1, *dens)
    if d == 1:
        return [x.numerator for x in v], 1
    return [x.numerator * (d // e) for x, e in zip(v, dens)], d


_ZERO = Fraction(0)


def rationals(ints: Sequence[int], den: int) -> list[Fraction]:
    """``[Fraction(a, den) for a in ints]`` with the zero entries shared."""
    return [Fraction(a, den) if a else _ZERO for a in ints]


class Matrix:
    """Dense matrix over a :class:`Field`.  Treated as immutable."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_int_rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        self._int_rows = None
        for r in self.rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def _raw(cls, field: Field, rows: list, ncols: int) -> Matrix:
        # rows are already field elements; skip conversion
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._int_rows = None
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    def inverse(self) -> Matrix:
        """Inverse by row reduction of ``[M | I]``; ``ValueError`` if singular."""
        n = self.nrows
        if self.ncols != n:
            raise DimensionMismatch("only square matrices have inverses")
        F = self.field
        aug = Matrix._raw(F, [list(r) + [F.one if k == i else F.zero for k in range(n)]
                              for i, r in enumerate(self.rows)], 2 * n)
        R, _, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix._raw(F, [row[n:] for row in R.rows[:n]], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatch("column of wrong length")
        rows = [[field(c[i]) for c in columns] for i in range(nrows)]
        return cls._raw(field, rows, len(columns))

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> list:
        return list(self.rows[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> Matrix:
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else
                           [[] for _ in range(self.ncols)], self.nrows)

    T = property(transpose)

    def apply(self, v: Sequence) -> list:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.ncols} columns")
        F = self.field
        q = F.characteristic
        if self._int_rows is None:
            if q:
                self._int_rows = [(1, [(j, x.v) for j, x in enumerate(r) if x]) for r in self.rows]
            else:
                dens = [math.lcm(1, *(x.denominator for x in r)) for r in self.rows]
                self._int_rows = [(d, [(j, x.numerator * (d // x.denominator)) for j, x in enumerate(r) if x])
                                  for d, r in zip(dens, self.rows)]
        w, dv = integer_form(F, v)
        if q:
            return [Mod(sum(a * w[j] for j, a in nz), q) for _, nz in self._int_rows]
        return [Fraction(sum(a * w[j] for j, a in nz), d * dv) for d, nz in self._int_rows]

    def __matmul__(self, other: Matrix) -> Matrix:
        _check_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        z = self.field.zero
        ocols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * ocols
            for k, x in enumerate(r):
                if x:
                    ok = orows[k]
                    for j in range(ocols):
                        y = ok[j]
                        if y:
                            acc[j] = acc[j] + x * y
            out.append(acc)
        return Matrix._raw(self.field, out, ocols)

    def __add__(self, other: Matrix) -> Matrix:
        _check_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._raw(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        _check_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix._raw(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.ncols)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._raw(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def flat(self) -> list:
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}: {body})"

    def rank(self) -> int:
        return rref(self)[1]


def hstack(*ms: Matrix) -> Matrix:
    nrows = ms[0].nrows
    for m in ms:
        if m.nrows != nrows:
            raise DimensionMismatch("hstack row counts differ")
    rows = [sum((m.rows[i] for m in ms), []) for i in range(nrows)]
    return Matrix._raw(ms[0].field, rows, sum(m.ncols for m in ms))


def vstack(*ms: Matrix) -> Matrix:
    ncols = ms[0].ncols
    for m in ms:
        if m.ncols != ncols:
            raise DimensionMismatch("vstack column counts differ")
    return Matrix._raw(ms[0].field, [list(r) for m in ms for r in m.rows], ncols)


def _rref_inplace(rows: list[list], ncols: int, field: Field, limit: int | None = None) -> list[int]:
    """Gauss-Jordan elimination on ``rows``; pivots only in the first ``limit`` columns."""
    if limit is None:
        limit = ncols
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = field.one / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows = [list(r) for r in M.rows]
    pivots = _rref_inplace(rows, M.ncols, M.field)
    return Matrix._raw(M.field, rows, M.ncols), len(pivots), pivots


def _as_vector(b) -> list:
    if isinstance(b, Matrix):
        if b.ncols != 1:
            raise DimensionMismatch("right-hand side must be a single column")
        return b.column(0)
    return list(b)


class LinearSolver:
    """Pre-factorised ``A x = b`` for repeated right-hand sides.

    Free variables are set to zero, so the returned solution is the unique
    one supported on the pivot columns of ``rref(A)``.
    """

    def __init__(self, A: Matrix):
        self.field = A.field
        self.nrows = A.nrows
        self.ncols = A.ncols
        n, m = A.nrows, A.ncols
        one, zero = A.field.one, A.field.zero
        rows = []
        for i, r in enumerate(A.rows):
            ext = [zero] * n
            ext[i] = one
            rows.append(list(r) + ext)
        self.pivots = _rref_inplace(rows, m + n, A.field, limit=m)
        self.rank = len(self.pivots)
        self._transform = [r[m:] for r in rows]

    def solve(self, b) -> list | None:
        b = _as_vector(b)
        if len(b) != self.nrows:
            raise DimensionMismatch(f"right-hand side of length {len(b)} against {self.nrows} rows")
        b = [self.field(x) for x in b]
        nz = [(j, x) for j, x in enumerate(b) if x]
        zero = self.field.zero

        def dot(t):
            s = zero
            for j, x in nz:
                if t[j]:
                    s = s + t[j] * x
            return s

        for t in self._transform[self.rank:]:
            if dot(t):
                return None
        x = [zero] * self.ncols
        for r, c in enumerate(self.pivots):
            x[c] = dot(self._transform[r])
        return x


def solve(A: Matrix, b) -> list | None:
    """A solution of ``A x = b`` with free variables zero, or ``None``."""
    return LinearSolver(A).solve(b)


def kernel_basis(M: Matrix) -> Subspace:
    """Right null space ``{x : M x = 0}`` as a subspace of ``k^ncols``."""
    R, rank, pivots = rref(M)
    field = M.field
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [field.zero] * M.ncols
        v[f] = field.one
        for r, c in enumerate(pivots):
            v[c] = -R.rows[r][f]
        vecs.append(v)
    return Subspace(field, M.ncols, vecs)


class EchelonBasis:
    """Incrementally grown basis with constant-time membership reduction.

    Rows are kept with a unit at their pivot and zeros at all earlier pivots,
    which is enough to reduce new vectors by a single pass in insertion order.
    When ``track`` is set, each stored row remembers its expression in terms
    of the vectors offered so far, so a dependency can be read off.
    """

    def __init__(self, field: Field, n: int, track: bool = False):
        self.field = field
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.track = track
        self.combos: list[list] = []
        self.offered = 0

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v):
        v = list(v)
        combo = None
        if self.track:
            combo = [self.field.zero] * (self.offered + 1)
            combo[self.offered] = self.field.one
        for row, p, cmb in zip(self.rows, self.pivots, self.combos if self.track else [None] * len(self.rows)):
            f = v[p]
            if f:
                for j in range(p, self.n):
                    if row[j]:
                        v[j] = v[j] - f * row[j]
                if self.track:
                    for j, y in enumerate(cmb):
                        if y:
                            combo[j] = combo[j] - f * y
        return v, combo

    def reduce(self, v) -> list:
        if self.track:
            saved = self.track
            self.track = False
            try:
                return self._reduce(v)[0]
            finally:
                self.track = saved
        return self._reduce(v)[0]

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v):
        """Insert ``v``; return True if it enlarged the span.

        With tracking on, a dependent vector returns the relation instead: a
        list ``c`` with ``sum(c[i] * offered[i]) == 0`` and ``c[-1] == 1``.
        """
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.n}")
        r, combo = self._reduce(v)
        self.offered += 1
        p = next((j for j, x in enumerate(r) if x), None)
        if p is None:
            return combo if self.track else False
        inv = self.field.one / r[p]
        r = [x * inv for x in r]
        self.rows.append(r)
        self.pivots.append(p)
        if self.track:
            self.combos.append([x * inv for x in combo])
            for c in self.combos:
                c.extend([self.field.zero] * (self.offered - len(c)))
        return True

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.n, self.rows)


class Subspace:
    """A subspace of ``k^n`` in canonical (RREF) form."""

    __slots__ = ("field", "ambient_dim", "rows", "pivots", "_int_rows")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
            rows.append([field(x) for x in v])
        pivots = _rref_inplace(rows, ambient_dim, field)
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows[:len(pivots)]
        self.pivots = pivots
        self._int_rows = None

    @classmethod
    def whole(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, Matrix.identity(field, n).rows)

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix._raw(self.field, [list(r) for r in self.rows], self.ambient_dim)

    def vectors(self) -> list[list]:
        return [list(r) for r in self.rows]

    def _check(self, other: Subspace) -> None:
        _check_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def _integer_rows(self) -> list[tuple[int, int, list[tuple[int, int]]]]:
        """Per row: pivot, denominator and the nonzero integer numerators after the pivot."""
        if self._int_rows is None:
            out = []
            for row, p in zip(self.rows, self.pivots):
                if self.field.characteristic:
                    out.append((p, 1, [(j, x.v) for j, x in enumerate(row) if j > p and x]))
                else:
                    d = math.lcm(1, *(x.denominator for x in row))
                    out.append((p, d, [(j, x.numerator * (d // x.denominator))
                                       for j, x in enumerate(row) if j > p and x]))
            self._int_rows = out
        return self._int_rows

    def _reduce_integer(self, v: Sequence) -> tuple[list[int], int]:
        """``v`` modulo this subspace as integer numerators over a denominator (residues over GF(p))."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        F = self.field
        q = F.characteristic
        w, d = integer_form(F, v)
        if q:
            for p, _, nz in self._integer_rows():
                f = w[p]
                if f:
                    w[p] = 0
                    for j, r in nz:
                        w[j] = (w[j] - f * r) % q
            return w, 1
        # v = w / d throughout; each row is r / dr with r[p] = dr
        for p, dr, nz in self._integer_rows():
            f = w[p]
            if f:
                if dr != 1:
                    w = [x * dr for x in w]
                    d *= dr
                w[p] = 0
                for j, r in nz:
                    w[j] -= f * r
        return w, d

    def reduce(self, v: Sequence) -> list:
        """Canonical representative of ``v`` modulo this subspace (zero on pivots)."""
        w, d = self._reduce_integer(v)
        q = self.field.characteristic
        if q:
            return [Mod(x, q) for x in w]
        return rationals(w, d)

    def contains(self, v: Sequence) -> bool:
        return not any(self._reduce_integer(v)[0])

    def coordinates(self, v: Sequence) -> list | None:
        """Coordinates of ``v`` in the RREF basis, or ``None`` if ``v`` is outside."""
        if not self.contains(v):
            return None
        return [self.field(v[p]) for p in self.pivots]

    def combine(self, coords: Sequence) -> list:
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coords, self.rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] = out[j] + c * x
        return out

    def complement_indices(self) -> list[int]:
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(r) for r in other.rows)

    __ge__ = contains_subspace

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.rows + other.rows)

    __add__ = sum

    def intersection(self, other: Subspace) -> Subspace:
        """Zassenhaus: echelonise ``[[U, U], [V, 0]]``; rows ``[0, w]`` span the meet."""
        self._check(other)
        n = self.ambient_dim
        z = [self.field.zero] * n
        rows = [list(u) + list(u) for u in self.rows] + [list(v) + z for v in other.rows]
        pivots = _rref_inplace(rows, 2 * n, self.field)
        meet = [rows[i][n:] for i, p in enumerate(pivots) if p >= n]
        return Subspace(self.field, n, meet)

    __and__ = intersection

    def equals(self, other: Subspace) -> bool:
        self._check(other)
        return self.rows == other.rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Subspace[{self.field}^{self.ambient_dim}, dim {self.dim}]({body})"


def span(field: Field, n: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(field, n, vectors)


def image(M: Matrix) -> Subspace:
    """Column space of ``M``."""
    return Subspace(M.field, M.nrows, M.columns())


def is_rref(M: Matrix) -> bool:
    R, _, _ = rref(M)
    return R == M
