"""Multilinear fragment of the free associative algebra with superinvolution.

Variables carry a type: a parity in {0, 1} and a sign (+1 symmetric, -1 skew).
Types are ordered 0+, 0-, 1+, 1-; a :data:`Signature` counts variables of each
type in that order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .exact import RowEchelon
from .star_algebra import StarAlgebra, components

__all__ = [
    "VarType",
    "VTYPES",
    "V0P",
    "V0M",
    "V1P",
    "V1M",
    "Var",
    "Monomial",
    "Polynomial",
    "Signature",
    "MultilinearityError",
    "VarTypeError",
    "star_free",
    "commutator",
    "jordan",
    "monomial_star",
    "signatures",
    "signature_vars",
    "multilinear_basis",
    "multinomial",
    "perm_index",
    "signature_of",
    "evaluate",
    "is_identity",
    "find_nonvanishing",
    "assignment_tuples",
    "evaluation_rank",
    "ComponentError",
]


class VarType(NamedTuple):
    parity: int
    sign: int  # +1 symmetric, -1 skew

    def __str__(self) -> str:
        return f"{self.parity}{'+' if self.sign > 0 else '-'}"

    @property
    def slot(self) -> int:
        """Position in the canonical order 0+, 0-, 1+, 1-."""
        return 2 * self.parity + (0 if self.sign > 0 else 1)

    @classmethod
    def parse(cls, text: str) -> "VarType":
        if len(text) != 2 or text[0] not in "01" or text[1] not in "+-":
            raise ValueError(f"bad variable type {text!r}")
        return cls(int(text[0]), 1 if text[1] == "+" else -1)


V0P = VarType(0, 1)
V0M = VarType(0, -1)
V1P = VarType(1, 1)
V1M = VarType(1, -1)
VTYPES = (V0P, V0M, V1P, V1M)

Signature = tuple  # (n1, n2, n3, n4) counts of 0+, 0-, 1+, 1-


class MultilinearityError(ValueError):
    pass


class VarTypeError(ValueError):
    pass


class Var(NamedTuple):
    index: int
    vtype: VarType

    def __str__(self) -> str:
        return f"x{self.index}:{self.vtype}"


Monomial = tuple  # tuple[Var, ...]


def monomial_star(m: Monomial) -> tuple[int, Monomial]:
    """Image of a monomial under the free superinvolution as (sign, monomial)."""
    odd = sum(v.vtype.parity for v in m)
    sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
    for v in m:
        sign *= v.vtype.sign
    return sign, tuple(reversed(m))


class Polynomial:
    """Finitely supported map Monomial -> Fraction with no zero coefficients.

    Each index carries one type throughout the polynomial and occurs at most
    once per monomial.
    """

    __slots__ = ("_terms", "_types")

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        types: dict[int, VarType] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            mono = tuple(mono)
            _check_monomial(mono, types)
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if not clean[mono]:
                del clean[mono]
        self._terms = clean
        self._types = types

    @classmethod
    def var(cls, index: int, vtype: VarType) -> "Polynomial":
        return cls({(Var(index, vtype),): 1})

    @classmethod
    def monomial(cls, mono: Iterable[Var], coeff: Fraction | int = 1) -> "Polynomial":
        return cls({tuple(mono): coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def var_types(self) -> dict[int, VarType]:
        return dict(self._types)

    def variables(self) -> list[Var]:
        return [Var(i, t) for i, t in sorted(self._types.items())]

    def is_multilinear(self) -> bool:
        """Every monomial uses exactly the same set of variables."""
        sets = {frozenset(v.index for v in m) for m in self._terms}
        return len(sets) <= 1

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "Polynomial":
        return Polynomial({m: c * v for m, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        return Polynomial(
            {tuple(Var(mapping.get(v.index, v.index), v.vtype) for v in m): c for m, c in self._terms.items()}
        )

    def __repr__(self) -> str:
        from .parser import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        from .parser import format_polynomial

        return format_polynomial(self)


def _check_monomial(mono: Monomial, types: dict[int, VarType]) -> None:
    seen = set()
    for v in mono:
        if v.index in seen:
            raise MultilinearityError(f"variable x{v.index} repeated in a monomial")
        seen.add(v.index)
        t = types.setdefault(v.index, v.vtype)
        if t != v.vtype:
            raise VarTypeError(f"variable x{v.index} used with types {t} and {v.vtype}")


def star_free(p: Polynomial) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for m, c in p.items():
        s, r = monomial_star(m)
        out[r] = out.get(r, 0) + s * c
    return Polynomial(out)


def commutator(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b - b * a


def jordan(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b + b * a


def signatures(n: int) -> list[Signature]:
    """All compositions of n into four parts, in ascending lexicographic order."""
    out = []
    for n1 in range(n + 1):
        for n2 in range(n - n1 + 1):
            for n3 in range(n - n1 - n2 + 1):
                out.append((n1, n2, n3, n - n1 - n2 - n3))
    return out


def multinomial(sig: Signature) -> int:
    r = factorial(sum(sig))
    for k in sig:
        r //= factorial(k)
    return r


def signature_vars(sig: Signature) -> list[Var]:
    """Canonical variable list: indices 1..n, types in block order."""
    out = []
    i = 1
    for t, k in zip(VTYPES, sig):
        for _ in range(k):
            out.append(Var(i, t))
            i += 1
    return out


def signature_of(vars_: Iterable[Var]) -> Signature:
    counts = [0, 0, 0, 0]
    for v in vars_:
        counts[v.vtype.slot] += 1
    return tuple(counts)


def multilinear_basis(sig: Signature) -> list[Monomial]:
    """All n! orderings of the canonical variables, lexicographic in the index word."""
    vs = signature_vars(sig)
    return [tuple(vs[i] for i in perm) for perm in itertools.permutations(range(len(vs)))]


def perm_index(word: Iterable[int]) -> int:
    """Lexicographic rank of a permutation word of 1..n (0-based result)."""
    w = list(word)
    n = len(w)
    remaining = sorted(w)
    idx = 0
    for k, x in enumerate(w):
        j = remaining.index(x)
        idx += j * factorial(n - 1 - k)
        remaining.pop(j)
    return idx


# evaluation into a StarAlgebra


class ComponentError(ValueError):
    pass


def _as_sparse(v) -> dict:
    if isinstance(v, Mapping):
        return {k: x for k, x in v.items() if x}
    return {k: x for k, x in enumerate(v) if x}


def _component_echelon(A: StarAlgebra, vtype: VarType) -> RowEchelon:
    key = ("component-echelon", vtype)
    if key not in A._cache:
        A._cache[key] = RowEchelon.from_rows(components(A)[vtype.slot], A.dim)
    return A._cache[key]


def _eval_monomials(A: StarAlgebra, p: Polynomial, vals: Mapping[int, dict]) -> dict:
    out: dict = {}
    for m, c in p.items():
        acc = vals[m[0].index]
        for v in m[1:]:
            if not acc:
                break
            acc = A.mul_sparse(acc, vals[v.index])
        for k, x in acc.items():
            nv = out.get(k, 0) + c * x
            if nv:
                out[k] = nv
            else:
                del out[k]
    return out


def evaluate(A: StarAlgebra, p: Polynomial, assignment: Mapping[int, Sequence | Mapping]) -> tuple:
    """Image of p under x_i -> assignment[i]; each value must lie in the matching component."""
    vals = {}
    for i, t in p.var_types().items():
        if i not in assignment:
            raise KeyError(f"assignment is missing x{i}")
        v = _as_sparse(assignment[i])
        if any(not 0 <= k < A.dim for k in v):
            raise ComponentError(f"vector for x{i} has the wrong length")
        if not _component_echelon(A, t).contains(v):
            raise ComponentError(f"value of x{i} is not in the {t} component of {A.name}")
        vals[i] = v
    out = _eval_monomials(A, p, vals)
    dense = [Fraction(0)] * A.dim
    for k, x in out.items():
        dense[k] = Fraction(x)
    return tuple(dense)


def _summand_groups(A: StarAlgebra) -> list[tuple[tuple, ...]]:
    """Component bases split by direct summand (products across summands vanish)."""
    comp = components(A)
    ranges = A.summands or ((0, A.dim),)
    groups = []
    for lo, hi in ranges:
        groups.append(tuple(tuple(v for v in comp[s] if lo <= min(v) < hi) for s in range(4)))
    return groups


def assignment_tuples(A: StarAlgebra, vtypes: Sequence[VarType]) -> Iterator[tuple[dict, ...]]:
    """All tuples of component-basis vectors for variables of the given types.

    Tuples mixing direct summands are skipped since every multilinear monomial
    evaluates to zero on them.
    """
    for group in _summand_groups(A):
        yield from itertools.product(*(group[t.slot] for t in vtypes))


def find_nonvanishing(A: StarAlgebra, p: Polynomial) -> tuple[dict[int, dict], tuple] | None:
    """A component-basis assignment on which p is nonzero, or None."""
    if not p.is_multilinear():
        raise MultilinearityError("identity checks need a multilinear polynomial")
    vs = p.variables()
    for tup in assignment_tuples(A, [v.vtype for v in vs]):
        vals = {v.index: x for v, x in zip(vs, tup)}
        out = _eval_monomials(A, p, vals)
        if out:
            dense = [Fraction(0)] * A.dim
            for k, x in out.items():
                dense[k] = Fraction(x)
            return vals, tuple(dense)
    return None


def is_identity(A: StarAlgebra, p: Polynomial) -> bool:
    """True iff p vanishes on every tuple of component-basis vectors (enough by multilinearity)."""
    if not p:
        return True
    return find_nonvanishing(A, p) is None


def evaluation_rank(A: StarAlgebra, polys: Sequence[Polynomial]) -> int:
    """Rank of the matrix whose rows are the evaluations of ``polys`` on all basis tuples.

    All polynomials must share one variable set with consistent types.
    """
    polys = [p for p in polys]
    if not polys:
        return 0
    types: dict[int, VarType] = {}
    for p in polys:
        if not p.is_multilinear():
            raise MultilinearityError("evaluation_rank needs multilinear polynomials")
        for i, t in p.var_types().items():
            if types.setdefault(i, t) != t:
                raise VarTypeError(f"x{i} has inconsistent types")
    idx = sorted(types)
    rows: list[dict] = [{} for _ in polys]
    for n, tup in enumerate(assignment_tuples(A, [types[i] for i in idx])):
        vals = dict(zip(idx, tup))
        for r, p in enumerate(polys):
            if not p:
                continue
            for k, x in _eval_monomials(A, p, vals).items():
                rows[r][(n, k)] = x
    # rank via the transposed problem is the same; keys are comparable tuples
    key_order = {k: i for i, k in enumerate(sorted({k for r in rows for k in r}))}
    ech = RowEchelon()
    for r in rows:
        ech.insert({key_order[k]: v for k, v in r.items()})
    return ech.rank
