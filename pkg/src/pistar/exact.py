"""Exact rational arithmetic and linear algebra over Q.

Rationals are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms).  Dense matrices are :class:`RatMatrix`; the hot paths of the
package use :class:`RowEchelon`, an incremental sparse reduced echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "RowEchelon",
    "parse_rational",
    "format_rational",
    "rank",
    "rref",
    "kernel_basis",
    "subspace_contains",
    "primitive",
]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or ``"-p/q"`` (a leading U+2212 is accepted)."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Immutable dense matrix of rationals.

    ``cols`` is stored explicitly so that 0-row matrices keep their width.
    """

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Sequence], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {cols}")
        self._rows = data
        self.rows = len(data)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "RatMatrix":
        out = []
        for r in rows:
            dense = [Fraction(0)] * cols
            for c, v in r.items():
                dense[c] = Fraction(v)
            out.append(dense)
        return cls(out, cols)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.cols == other.cols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.cols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"RatMatrix([{body}], cols={self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def with_rows(self, extra: Iterable[Sequence]) -> "RatMatrix":
        return RatMatrix(list(self._rows) + [list(r) for r in extra], self.cols)


def _as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m)


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free forward elimination in place; returns the pivot columns.

    After the call the first ``len(pivots)`` rows are an integer row echelon
    form of the input.  Every division is exact (entries are minors).
    """
    m = len(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rank(m) -> int:
    """Exact rank over Q."""
    m = _as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss(_integer_rows(m), m.cols))


def rref(m) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form (same shape, zero rows last) and its pivot columns."""
    m = _as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return RatMatrix.zeros(m.rows, m.cols), []
    rows = _integer_rows(m)
    pivots = _bareiss(rows, m.cols)
    ech = [[Fraction(x) for x in rows[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        inv = 1 / ech[i][c]
        ech[i] = [x * inv for x in ech[i]]
        for k in range(i):
            f = ech[k][c]
            if f:
                ech[k] = [a - f * b for a, b in zip(ech[k], ech[i])]
    ech += [[Fraction(0)] * m.cols for _ in range(m.rows - len(pivots))]
    return RatMatrix(ech, m.cols), pivots


def kernel_basis(m) -> RatMatrix:
    """Rows form a basis of the right null space {v : M v = 0}."""
    m = _as_matrix(m)
    red, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return RatMatrix(basis, m.cols)


def subspace_contains(span_rows, v: Sequence) -> bool:
    """True iff ``v`` lies in the row span of ``span_rows``."""
    span = _as_matrix(span_rows)
    if len(v) != span.cols:
        raise ValueError(f"width mismatch: span has {span.cols} columns, vector has {len(v)}")
    if all(Fraction(x) == 0 for x in v):
        return True
    return rank(span) == rank(span.with_rows([v]))


def primitive(vec: Mapping[int, Fraction | int]) -> dict[int, int]:
    """Scale a sparse rational vector to a primitive integer vector.

    The first nonzero entry (by key) is made positive.  Zero entries are dropped.
    """
    items = [(k, Fraction(v)) for k, v in sorted(vec.items()) if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [(k, int(v * den)) for k, v in items]
    g = 0
    for _, v in ints:
        g = gcd(g, v)
    if ints[0][1] < 0:
        g = -g
    return {k: v // g for k, v in ints}


class RowEchelon:
    """Incremental reduced row echelon form of sparse rational vectors.

    Rows are kept fully reduced: each stored row has a leading 1 at its pivot
    column and zeros at every other pivot column.  Consequently reducing a
    vector needs one pass over the pivots it touches, and the final basis is
    the unique rref of the span regardless of insertion order.
    """

    def __init__(self, width: int | None = None):
        self.width = width
        self._rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        if self.width is not None and any(k < 0 or k >= self.width for k in v):
            raise ValueError("vector index outside echelon width")
        for c in [c for c in v if c in self._rows]:
            f = v.get(c)
            if not f:
                continue
            for k, x in self._rows[c].items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec: Mapping[int, Fraction | int]) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Mapping[int, Fraction | int]) -> bool:
        """Add ``vec`` to the span; return True iff the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for row in self._rows.values():
            f = row.get(p)
            if f:
                for k, x in v.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._rows[p] = v
        return True

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def matrix(self, width: int | None = None) -> RatMatrix:
        w = width if width is not None else self.width
        if w is None:
            w = 1 + max((k for r in self._rows.values() for k in r), default=-1)
        return RatMatrix.from_sparse(self.basis(), w)

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, Fraction | int]], width: int | None = None) -> "RowEchelon":
        ech = cls(width)
        for r in rows:
            ech.insert(r)
        return ech
