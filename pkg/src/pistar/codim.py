"""Codimensions by exact rank of evaluation matrices.

For a signature ``sig`` the matrix has one row per multilinear monomial
(lexicographic permutation order) and one column per (tuple of
component-basis vectors, output coordinate).  Its rank is the codimension of
that signature; the left kernel is the space of multilinear identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

from .exact import RatMatrix, RowEchelon, kernel_basis, primitive
from .free_star import (
    VTYPES,
    Polynomial,
    Signature,
    Var,
    assignment_tuples,
    commutator,
    evaluation_rank,
    multilinear_basis,
    multinomial,
    signature_vars,
    signatures,
)
from .star_algebra import StarAlgebra, components

__all__ = [
    "SignatureCodimRecord",
    "CodimSequence",
    "CrosscheckReport",
    "signature_codim",
    "codim",
    "codim_sequence",
    "proper_from_codim",
    "proper_spanning_set",
    "proper_signature_codim",
    "crosscheck_eq1_eq3",
    "identity_space",
    "in_variety",
    "UnsupportedDegreeError",
]


class UnsupportedDegreeError(ValueError):
    pass


@dataclass(frozen=True)
class SignatureCodimRecord:
    sig: Signature
    pn_dim: int
    identity_dim: int
    codim: int


@dataclass(frozen=True)
class CodimSequence:
    algebra: str
    c: tuple
    gamma: tuple | None
    per_signature: tuple = ()

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "c": list(self.c),
            "gamma": None if self.gamma is None else list(self.gamma),
            "per_signature": [{"sig": list(r.sig), "codim": r.codim} for r in self.per_signature],
        }


def _column_space(A: StarAlgebra, sig: Signature) -> RowEchelon:
    """Echelon basis of the column space of the signature's evaluation matrix."""
    key = ("colspace", tuple(sig))
    cached = A._cache.get(key)
    if cached is not None:
        return cached
    n = sum(sig)
    width = factorial(n)
    ech = RowEchelon(width)
    comp = components(A)
    if n == 0 or any(k and not comp[s] for s, k in enumerate(sig)):
        A._cache[key] = ech
        return ech
    vtypes = [v.vtype for v in signature_vars(sig)]
    facts = [factorial(k) for k in range(n)]
    mul = A.mul_sparse
    seen: set = set()
    for tup in assignment_tuples(A, vtypes):
        cols: dict[int, dict[int, object]] = {}

        # depth-first over permutation prefixes; ``rem`` keeps unused variable
        # positions in increasing order so leaf order is lexicographic
        def dfs(prod, rem, base):
            r = len(rem)
            if r == 0:
                for k, x in prod.items():
                    cols.setdefault(k, {})[base] = x
                return
            step = facts[r - 1]
            for j, pos in enumerate(rem):
                nxt = mul(prod, tup[pos]) if prod is not None else tup[pos]
                if nxt:
                    dfs(nxt, rem[:j] + rem[j + 1 :], base + j * step)

        dfs(None, list(range(n)), 0)
        for col in cols.values():
            p = primitive(col)
            key2 = tuple(p.items())
            if key2 in seen:
                continue
            seen.add(key2)
            ech.insert(p)
            if ech.rank == width:
                break
        if ech.rank == width:
            break
    A._cache[key] = ech
    return ech


def signature_codim(A: StarAlgebra, sig: Signature) -> SignatureCodimRecord:
    sig = tuple(sig)
    if len(sig) != 4 or any(k < 0 for k in sig):
        raise ValueError(f"bad signature {sig}")
    n = sum(sig)
    width = factorial(n)
    rank = _column_space(A, sig).rank if n else 1
    return SignatureCodimRecord(sig, width, width - rank, rank)


def codim(A: StarAlgebra, n: int) -> int:
    """c_n = sum over signatures of multinomial * signature codimension (c_0 = 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return sum(multinomial(s) * signature_codim(A, s).codim for s in signatures(n))


def proper_from_codim(c: Sequence[int]) -> list[int]:
    """Inverse binomial transform gamma_n = sum_i (-1)^(n-i) C(n,i) c_i."""
    c = [int(x) for x in c]
    if not c or c[0] != 1:
        raise ValueError("sequence must start with c_0 = 1")
    gamma = [sum((-1) ** (n - i) * comb(n, i) * c[i] for i in range(n + 1)) for n in range(len(c))]
    for n in range(len(c)):
        assert sum(comb(n, i) * gamma[i] for i in range(n + 1)) == c[n]
    neg = [n for n, g in enumerate(gamma) if g < 0]
    if neg:
        raise ValueError(f"negative proper codimension at n={neg[0]}: algebra not unitary or sequence inconsistent")
    return gamma


def codim_sequence(A: StarAlgebra, N: int, per_signature: bool = False) -> CodimSequence:
    c = tuple(codim(A, n) for n in range(N + 1))
    gamma = None
    if A.is_unitary:
        try:
            gamma = tuple(proper_from_codim(c))
        except ValueError:
            gamma = None
    recs = ()
    if per_signature:
        recs = tuple(signature_codim(A, s) for n in range(1, N + 1) for s in signatures(n))
    return CodimSequence(A.name, c, gamma, recs)


def _var(i: int, slot: int) -> Polynomial:
    return Polynomial.var(i, VTYPES[slot])


def proper_spanning_set(sig: Signature) -> list[Polynomial]:
    """Spanning set of the proper polynomials of a signature of degree <= 2."""
    sig = tuple(sig)
    n = sum(sig)
    if n > 2:
        raise UnsupportedDegreeError("proper spanning sets are implemented for degree <= 2 only")
    if n == 0:
        return [Polynomial({(): 1})]
    slots = [s for s in range(4) for _ in range(sig[s])]
    if n == 1:
        return [] if slots[0] == 0 else [_var(1, slots[0])]
    x1, x2 = _var(1, slots[0]), _var(2, slots[1])
    if slots[0] == 0:
        return [commutator(x1, x2)]
    return [x1 * x2, x2 * x1]


def proper_signature_codim(A: StarAlgebra, sig: Signature) -> int:
    sig = tuple(sig)
    if sum(sig) == 0:
        return 1
    return evaluation_rank(A, proper_spanning_set(sig))


@dataclass
class CrosscheckReport:
    algebra: str
    gamma_eq1: list[int]
    gamma_eq3: list[int]
    breakdown: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.gamma_eq1 == self.gamma_eq3


def crosscheck_eq1_eq3(A: StarAlgebra, N: int = 2) -> CrosscheckReport:
    """Proper codimensions two ways: inverse binomial transform vs per-signature ranks."""
    if N > 2:
        raise UnsupportedDegreeError("the direct side is implemented for n <= 2")
    c = [codim(A, n) for n in range(N + 1)]
    g1 = proper_from_codim(c)
    g3 = [1]
    breakdown = {}
    for n in range(1, N + 1):
        total = 0
        for s in signatures(n):
            v = proper_signature_codim(A, s)
            if v:
                breakdown[s] = v
            total += multinomial(s) * v
        g3.append(total)
    return CrosscheckReport(A.name, g1, g3, breakdown)


def identity_space(A: StarAlgebra, sig: Signature) -> RatMatrix:
    """Rows: basis of multilinear identities, coordinates in multilinear_basis(sig) order."""
    sig = tuple(sig)
    n = sum(sig)
    width = factorial(n)
    ech = _column_space(A, sig)
    if n == 0:
        return RatMatrix([], 1)
    return kernel_basis(ech.matrix(width))


def identity_polynomials(A: StarAlgebra, sig: Signature) -> list[Polynomial]:
    basis = multilinear_basis(sig)
    out = []
    for row in identity_space(A, sig):
        out.append(Polynomial({m: c for m, c in zip(basis, row) if c}))
    return out


def in_variety(B: StarAlgebra, A: StarAlgebra, max_n: int = 3) -> bool:
    """Bounded check of B in var*(A): Id(A) is contained in Id(B) in every signature of degree <= max_n.

    Equivalently the column space of B's evaluation matrix lies in A's.
    """
    for n in range(1, max_n + 1):
        for s in signatures(n):
            ea = _column_space(A, s)
            for row in _column_space(B, s).basis():
                if not ea.contains(row):
                    return False
    return True


def polynomial_vector(p: Polynomial, sig: Signature) -> dict[int, object]:
    """Coordinates of a polynomial on the canonical variables of ``sig``."""
    from .free_star import perm_index

    canon = signature_vars(sig)
    want = {v.index: v.vtype for v in canon}
    out = {}
    for m, c in p.items():
        if len(m) != len(canon) or any(want.get(v.index) != v.vtype for v in m):
            raise ValueError("polynomial is not on the canonical variables of the signature")
        out[perm_index(v.index for v in m)] = c
    return out


_ = Var  # re-exported type used in annotations by callers
