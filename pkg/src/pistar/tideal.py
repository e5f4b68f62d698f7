"""Bounded-degree verification of T*-ideal generating sets.

The multilinear part of the T*-ideal generated by G in a signature is spanned
by products a g(S_1, ..., S_k) b where a, b are monomials and each S_i is the
symmetric or skew part of a monomial of the right parity on a block of
variables.  Arbitrary slot values are linear combinations of such parts, so
restricting to them does not change the span.

Peeling off the first letter of a (or last of b) gives the recursion

    C(V) = sum_x ( x C(V - x) + C(V - x) x ) + T(V)

where T(V) collects the instances with a and b empty.  C only depends on the
signature of V up to type-preserving renaming, so it is memoised on
signatures with canonical variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .codim import _column_space, identity_space
from .exact import RowEchelon
from .free_star import (
    Monomial,
    MultilinearityError,
    Polynomial,
    Signature,
    Var,
    find_nonvanishing,
    monomial_star,
    perm_index,
    signature_of,
    signature_vars,
    signatures,
    star_free,
)
from .parser import format_polynomial, parse_generators
from .star_algebra import StarAlgebra

__all__ = [
    "GeneratorSet",
    "SignatureCheck",
    "DegreeRecord",
    "TidealReport",
    "consequences",
    "verify_tideal",
    "MAX_DEGREE",
]

MAX_DEGREE = 5


def _normalized(p: Polynomial) -> Polynomial:
    """Scale so the first coefficient (in a fixed monomial order) is 1."""
    items = sorted(p.items(), key=lambda mc: [(v.index, v.vtype.slot) for v in mc[0]])
    return p.scale(1 / items[0][1]) if items else p


class GeneratorSet:
    """Multilinear generators, closed under the free superinvolution.

    ``sources`` keeps the expression each generator came from, so reports can
    show which wildcard expansion was used.
    """

    def __init__(self, gens: Iterable[Polynomial] = (), sources: Sequence[tuple[str, int]] = ()):
        self._gens: list[Polynomial] = []
        self._keys: set = set()
        self.sources: list[tuple[str, int]] = list(sources)
        for g in gens:
            self.add(g)

    def add(self, g: Polynomial) -> None:
        if not g:
            return
        if not g.is_multilinear():
            raise MultilinearityError(f"generator {g} is not multilinear")
        for h in (g, star_free(g)):
            if not h:
                continue
            key = _normalized(h)
            if key not in self._keys:
                self._keys.add(key)
                self._gens.append(h)

    @classmethod
    def parse(cls, exprs: Iterable[str]) -> "GeneratorSet":
        gs = cls()
        for e in exprs:
            polys = parse_generators(e)
            gs.sources.append((e, len(polys)))
            for p in polys:
                gs.add(p)
        return gs

    @classmethod
    def from_file_text(cls, content: str) -> "GeneratorSet":
        lines = [ln.split("#", 1)[0].strip() for ln in content.splitlines()]
        return cls.parse([ln for ln in lines if ln])

    def without(self, expr: str) -> "GeneratorSet":
        """Copy with every expansion of ``expr`` (and its star) removed."""
        drop = set()
        for p in parse_generators(expr):
            drop.add(_normalized(p))
            if star_free(p):
                drop.add(_normalized(star_free(p)))
        out = GeneratorSet(sources=[s for s in self.sources if s[0] != expr])
        for g in self._gens:
            if _normalized(g) not in drop:
                out.add(g)
        return out

    def __iter__(self):
        return iter(self._gens)

    def __len__(self) -> int:
        return len(self._gens)

    @property
    def min_degree(self) -> int:
        return min((g.degree for g in self._gens), default=0)


def _substitute(g: Polynomial, values: dict[int, Polynomial]) -> Polynomial:
    out: dict = {}
    for m, c in g.items():
        acc = values[m[0].index]
        for v in m[1:]:
            acc = acc * values[v.index]
            if not acc:
                break
        for mono, x in acc.items():
            out[mono] = out.get(mono, 0) + c * x
    return Polynomial(out)


@lru_cache(maxsize=None)
def _slot_values(block: tuple[Var, ...], parity: int, sign: int) -> tuple[Polynomial, ...]:
    """Symmetric (sign +1) or skew (sign -1) parts of the monomials on ``block``."""
    if sum(v.vtype.parity for v in block) % 2 != parity:
        return ()
    out = []
    seen = set()
    for perm in itertools.permutations(block):
        if perm in seen:
            continue
        e, rev = monomial_star(perm)
        seen.add(perm)
        seen.add(rev)
        if rev == perm:
            if e * sign == 1:
                out.append(Polynomial({perm: 2}))
        else:
            out.append(Polynomial({perm: 1, rev: sign * e}))
    return tuple(out)


def _ordered_partitions(items: Sequence[Var], k: int) -> Iterable[tuple[tuple[Var, ...], ...]]:
    """Ways to split ``items`` into k nonempty labelled blocks."""
    n = len(items)
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) != k:
            continue
        yield tuple(tuple(v for v, lab in zip(items, labels) if lab == b) for b in range(k))


def _vector(p: Polynomial) -> dict[int, object]:
    return {perm_index(v.index for v in m): c for m, c in p.items()}


class _Engine:
    def __init__(self, gens: GeneratorSet):
        self.gens = list(gens)
        self.memo: dict[Signature, RowEchelon] = {}

    def space(self, sig: Signature) -> RowEchelon:
        sig = tuple(sig)
        if sig in self.memo:
            return self.memo[sig]
        n = sum(sig)
        ech = RowEchelon(factorial(n))
        if n == 0:
            self.memo[sig] = ech
            return ech
        vs = signature_vars(sig)
        # left and right multiples of lower consequences
        for pos, x in enumerate(vs):
            rest = vs[:pos] + vs[pos + 1 :]
            sub_sig = signature_of(rest)
            sub = self.space(sub_sig)
            if not len(sub):
                continue
            canon = signature_vars(sub_sig)
            rename = {c.index: r.index for c, r in zip(canon, rest)}
            basis = _monomials(canon)
            xp = Polynomial.var(x.index, x.vtype)
            for row in sub.basis():
                p = Polynomial({basis[k]: c for k, c in row.items()}).rename(rename)
                ech.insert(_vector(xp * p))
                ech.insert(_vector(p * xp))
        # substitution instances with a and b empty
        for g in self.gens:
            gv = g.variables()
            k = len(gv)
            if k > n:
                continue
            for blocks in _ordered_partitions(vs, k):
                choices = [_slot_values(b, y.vtype.parity, y.vtype.sign) for b, y in zip(blocks, gv)]
                if any(not c for c in choices):
                    continue
                for combo in itertools.product(*choices):
                    val = _substitute(g, {y.index: s for y, s in zip(gv, combo)})
                    if val:
                        ech.insert(_vector(val))
        self.memo[sig] = ech
        return ech


_MONO_CACHE: dict = {}


def _monomials(canon: list[Var]) -> list[Monomial]:
    key = tuple(canon)
    if key not in _MONO_CACHE:
        _MONO_CACHE[key] = [tuple(canon[i] for i in perm) for perm in itertools.permutations(range(len(canon)))]
    return _MONO_CACHE[key]


def consequences(gens: GeneratorSet | Iterable[Polynomial], sig: Signature, _engine: _Engine | None = None) -> list[dict]:
    """rref basis (sparse rows over multilinear_basis(sig)) of the consequence space."""
    if not isinstance(gens, GeneratorSet):
        gens = GeneratorSet(gens)
    eng = _engine or _Engine(gens)
    return eng.space(tuple(sig)).basis()


@dataclass(frozen=True)
class SignatureCheck:
    sig: Signature
    consequence_dim: int
    identity_dim: int
    sound: bool

    @property
    def ok(self) -> bool:
        return self.sound and self.consequence_dim == self.identity_dim


@dataclass(frozen=True)
class DegreeRecord:
    n: int
    consequence_dim: int
    identity_dim: int
    verdict: str  # "verified" or "failed"
    failing: tuple = ()


@dataclass
class GeneratorCheck:
    generator: str
    identity: bool
    witness: str | None = None


@dataclass
class TidealReport:
    algebra: str
    max_degree: int
    generators: list = field(default_factory=list)
    degrees: list = field(default_factory=list)
    signatures: list = field(default_factory=list)
    expansions: list = field(default_factory=list)

    @property
    def generators_ok(self) -> bool:
        return all(g.identity for g in self.generators)

    @property
    def ok(self) -> bool:
        return self.generators_ok and all(d.verdict == "verified" for d in self.degrees)

    @property
    def verdict(self) -> str:
        if not self.generators_ok:
            return "failed: a generator is not an identity"
        bad = [d.n for d in self.degrees if d.verdict != "verified"]
        if bad:
            return f"failed at degree {bad[0]}"
        return f"verified at degrees <= {self.max_degree} (bounded check)"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "max_degree": self.max_degree,
            "verdict": self.verdict,
            "generators": [{"generator": g.generator, "identity": g.identity, "witness": g.witness} for g in self.generators],
            "expansions": [{"expression": e, "count": c} for e, c in self.expansions],
            "degrees": [
                {
                    "n": d.n,
                    "consequence_dim": d.consequence_dim,
                    "identity_dim": d.identity_dim,
                    "verdict": d.verdict,
                    "failing_signatures": [list(s) for s in d.failing],
                }
                for d in self.degrees
            ],
        }


def _witness_text(A: StarAlgebra, vals: dict, value: tuple) -> str:
    def vec(v):
        return " + ".join(f"{c}*{A.basis[k]}" for k, c in sorted(v.items()))

    parts = [f"x{i} -> {vec(v)}" for i, v in sorted(vals.items())]
    return "; ".join(parts) + f" gives {vec({k: c for k, c in enumerate(value) if c})}"


def verify_tideal(A: StarAlgebra, gens: GeneratorSet, max_degree: int = 4) -> TidealReport:
    """Generators are identities, and per signature of degree <= max_degree the
    consequence space is contained in and equal in dimension to the identity space."""
    if max_degree > MAX_DEGREE:
        raise ValueError(f"max_degree is capped at {MAX_DEGREE}")
    rep = TidealReport(A.name, max_degree, expansions=list(gens.sources))
    for g in gens:
        hit = find_nonvanishing(A, g)
        rep.generators.append(
            GeneratorCheck(format_polynomial(g), hit is None, None if hit is None else _witness_text(A, *hit))
        )
    eng = _Engine(gens)
    for n in range(1, max_degree + 1):
        cdim = idim = 0
        failing = []
        for sig in signatures(n):
            cons = eng.space(sig)
            ids = identity_space(A, sig).rows
            cols = _column_space(A, sig)
            # a consequence is an identity iff it is orthogonal to every column
            colbasis = cols.basis()
            sound = all(
                sum(c * col.get(k, 0) for k, c in row.items()) == 0 for row in cons.basis() for col in colbasis
            )
            chk = SignatureCheck(sig, cons.rank, ids, sound)
            rep.signatures.append(chk)
            cdim += cons.rank
            idim += ids
            if not chk.ok:
                failing.append(sig)
        rep.degrees.append(DegreeRecord(n, cdim, idim, "verified" if not failing else "failed", tuple(failing)))
    return rep
