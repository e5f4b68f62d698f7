"""Proper cocharacter multiplicities in degree <= 2.

A multiplicity is the rank of the evaluation matrix of the highest weight
vectors attached to a multipartition, so it is nonzero exactly when some
vector is a non-identity and never exceeds the number of vectors.  Every
partition of size <= 2 has a character of degree 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping

from .free_star import VTYPES, Polynomial, VarType, commutator, evaluation_rank, jordan
from .star_algebra import StarAlgebra

__all__ = [
    "Multipartition",
    "HwvSet",
    "MultiplicityTable",
    "multipartitions",
    "hwv_catalog",
    "multiplicity",
    "cocharacter_table",
    "codim_from_table",
    "markdown_table",
    "UnsupportedDegreeError",
]


class UnsupportedDegreeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Multipartition:
    """Four partitions, one per variable type in the order 0+, 0-, 1+, 1-."""

    parts: tuple

    def __post_init__(self):
        if len(self.parts) != 4:
            raise ValueError("a multipartition has four parts")
        clean = tuple(tuple(int(x) for x in p) for p in self.parts)
        for p in clean:
            if any(x <= 0 for x in p) or list(p) != sorted(p, reverse=True):
                raise ValueError(f"{p} is not a partition")
        object.__setattr__(self, "parts", clean)

    @classmethod
    def of(cls, *pieces: tuple[tuple[int, ...], str]) -> "Multipartition":
        """Multipartition.of(((1,), "0+"), ((1,), "1-"))."""
        parts: list = [(), (), (), ()]
        for lam, t in pieces:
            slot = VarType.parse(t).slot
            if parts[slot]:
                raise ValueError(f"type {t} given twice")
            parts[slot] = tuple(lam)
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Multipartition":
        """Inverse of ``str``: "(1)_0+ x (1)_1-"."""
        pieces = []
        for chunk in text.split(" x "):
            chunk = chunk.strip()
            lam, _, t = chunk.partition(")_")
            pieces.append((tuple(int(x) for x in lam.lstrip("(").split(",")), t))
        return cls.of(*pieces)

    @property
    def signature(self) -> tuple[int, int, int, int]:
        return tuple(sum(p) for p in self.parts)

    @property
    def degree(self) -> int:
        return sum(self.signature)

    @property
    def is_mixed(self) -> bool:
        return sum(1 for p in self.parts if p) > 1

    def pieces(self) -> list[tuple[tuple, VarType]]:
        return [(p, VTYPES[s]) for s, p in enumerate(self.parts) if p]

    def __str__(self) -> str:
        return " x ".join(f"({','.join(map(str, p))})_{t}" for p, t in self.pieces())

    def latex(self) -> str:
        inner = ",".join(f"({','.join(map(str, p))})_{{{t.parity}^{'+' if t.sign > 0 else '-'}}}" for p, t in self.pieces())
        return f"({inner})"


def _partitions(n: int) -> list[tuple]:
    return {0: [()], 1: [(1,)], 2: [(2,), (1, 1)]}[n]


def multipartitions(n: int) -> Iterator[Multipartition]:
    """All multipartitions of total degree n <= 2: signatures in ascending
    lexicographic order, then partitions lexicographically."""
    from .free_star import signatures

    if n > 2:
        raise UnsupportedDegreeError("multipartitions are enumerated for degree <= 2 only")
    for sig in signatures(n):
        choices = [_partitions(k) for k in sig]
        for a in choices[0]:
            for b in choices[1]:
                for c in choices[2]:
                    for d in choices[3]:
                        yield Multipartition((a, b, c, d))


@dataclass(frozen=True)
class HwvSet:
    mp: Multipartition
    vectors: tuple

    def __len__(self) -> int:
        return len(self.vectors)


def hwv_catalog(mp: Multipartition) -> HwvSet:
    """Proper highest weight vectors of a multipartition of degree <= 2."""
    if mp.degree > 2:
        raise UnsupportedDegreeError("highest weight vectors are tabulated for degree <= 2 only")
    pieces = mp.pieces()
    out: list[Polynomial] = []
    if mp.degree == 1:
        (_, t), = pieces
        if t.slot != 0:
            out = [Polynomial.var(1, t)]
    elif len(pieces) == 1:
        lam, t = pieces[0]
        x1, x2 = Polynomial.var(1, t), Polynomial.var(2, t)
        if lam == (1, 1):
            out = [commutator(x1, x2)]
        elif t.slot != 0:
            out = [jordan(x1, x2)]
    elif len(pieces) == 2:
        (_, s), (_, t) = pieces
        x1, x2 = Polynomial.var(1, s), Polynomial.var(2, t)
        out = [commutator(x1, x2)] if s.slot == 0 else [commutator(x1, x2), x1 * x2]
    return HwvSet(mp, tuple(out))


def multiplicity(A: StarAlgebra, mp: Multipartition) -> int:
    key = ("multiplicity", mp)
    if key not in A._cache:
        A._cache[key] = evaluation_rank(A, hwv_catalog(mp).vectors)
    return A._cache[key]


@dataclass(frozen=True)
class MultiplicityTable:
    algebra: str
    entries: tuple  # ((Multipartition, int), ...) in enumeration order

    def as_dict(self) -> dict[Multipartition, int]:
        return dict(self.entries)

    def nonzero(self) -> dict[Multipartition, int]:
        return {mp: m for mp, m in self.entries if m}

    def __getitem__(self, mp: Multipartition) -> int:
        return self.as_dict().get(mp, 0)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "multiplicities": {str(mp): m for mp, m in self.entries if m}}

    @classmethod
    def from_mapping(cls, name: str, m: Mapping[Multipartition, int]) -> "MultiplicityTable":
        order = list(multipartitions(1)) + list(multipartitions(2))
        extra = [mp for mp in m if mp not in order]
        if extra:
            raise UnsupportedDegreeError(f"multipartition {extra[0]} has degree > 2")
        return cls(name, tuple((mp, int(m.get(mp, 0))) for mp in order))


def cocharacter_table(A: StarAlgebra) -> MultiplicityTable:
    entries = [(mp, multiplicity(A, mp)) for n in (1, 2) for mp in multipartitions(n)]
    return MultiplicityTable(A.name, tuple(entries))


def codim_from_table(table: MultiplicityTable | Mapping[Multipartition, int], N: int) -> list[int]:
    """c_0..c_N assuming proper codimensions vanish above degree 2."""
    m = table.as_dict() if isinstance(table, MultiplicityTable) else dict(table)
    g1 = 0
    g2 = 0
    for mp, k in m.items():
        if mp.degree == 1:
            g1 += k
        elif mp.degree == 2:
            g2 += (2 if mp.is_mixed else 1) * k
        elif k:
            raise UnsupportedDegreeError("table entries above degree 2")
    return [1 + n * g1 + comb(n, 2) * g2 for n in range(N + 1)]


def format_characters(nonzero: Mapping[Multipartition, int]) -> str:
    if not nonzero:
        return "-"
    out = []
    for mp, k in nonzero.items():
        chi = " ⊗ ".join(f"χ(({','.join(map(str, p))})_{t})" for p, t in mp.pieces())
        out.append(chi if k == 1 else f"{k}{chi}")
    return ", ".join(out)


def markdown_table(tables: list[MultiplicityTable]) -> str:
    lines = ["| algebra | proper non-zero cocharacters |", "|---|---|"]
    for t in tables:
        lines.append(f"| {t.algebra} | {format_characters(t.nonzero())} |")
    return "\n".join(lines)
