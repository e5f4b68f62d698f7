"""Finite-dimensional superalgebras with superinvolution.

An algebra is stored by structure constants on a basis whose elements are
homogeneous.  Sparse coefficient vectors are ``dict[int, Fraction | int]``;
dense vectors are tuples of length ``dim``.  Integer-valued coefficients are
kept as plain ``int`` so the evaluation loops stay cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exact import RatMatrix, RowEchelon, format_rational, parse_rational, rref

__all__ = [
    "StarAlgebra",
    "Violation",
    "ComponentBases",
    "InvalidAlgebraError",
    "validate",
    "components",
    "multiply",
    "star",
    "direct_sum",
    "unitarize",
    "ideal_closure",
    "subalgebra_closure",
    "quotient",
    "load_json",
    "dump_json",
    "to_json_dict",
    "from_json_dict",
    "relabel",
    "same_structure",
]

Sparse = dict  # int -> Fraction | int


class InvalidAlgebraError(ValueError):
    pass


def _num(x):
    """Fraction with denominator 1 becomes int."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _clean(vec: Mapping[int, object]) -> Sparse:
    return {k: _num(v) for k, v in sorted(vec.items()) if v}


def _dense(vec: Mapping[int, object], dim: int) -> tuple:
    out = [Fraction(0)] * dim
    for k, v in vec.items():
        out[k] = Fraction(v)
    return tuple(out)


def _sparse(vec: Sequence) -> Sparse:
    return {k: _num(v) for k, v in enumerate(vec) if v}


def _add_into(acc: dict, vec: Mapping[int, object], c=1) -> None:
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    """Algebra given by structure constants, a parity per basis element and the
    matrix of the superinvolution (row ``i`` is the image of basis element ``i``).

    ``summands`` optionally records index ranges of direct summands; evaluation
    code uses it to skip tuples that mix summands (such products vanish).
    """

    name: str
    basis: tuple
    mult: Mapping  # (i, j) -> sparse vector
    grading: tuple
    involution: tuple  # tuple of sparse vectors
    unit: tuple | None = None
    summands: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        d = len(self.basis)
        if len(self.grading) != d:
            raise InvalidAlgebraError(f"grading has {len(self.grading)} entries for dimension {d}")
        if any(g not in (0, 1) for g in self.grading):
            raise InvalidAlgebraError("grading entries must be 0 or 1")
        if len(self.involution) != d:
            raise InvalidAlgebraError(f"involution has {len(self.involution)} rows for dimension {d}")
        for (i, j), vec in self.mult.items():
            if not (0 <= i < d and 0 <= j < d) or any(not 0 <= k < d for k in vec):
                raise InvalidAlgebraError(f"structure constant index out of range at ({i}, {j})")
        for row in self.involution:
            if any(not 0 <= k < d for k in row):
                raise InvalidAlgebraError("involution index out of range")
        if self.unit is not None and len(self.unit) != d:
            raise InvalidAlgebraError("unit vector has the wrong length")
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "grading", tuple(self.grading))
        object.__setattr__(self, "mult", {k: _clean(v) for k, v in self.mult.items() if _clean(v)})
        object.__setattr__(self, "involution", tuple(_clean(r) for r in self.involution))
        if self.unit is not None:
            object.__setattr__(self, "unit", tuple(Fraction(x) for x in self.unit))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_unitary(self) -> bool:
        return self.unit is not None

    def renamed(self, name: str) -> "StarAlgebra":
        return StarAlgebra(name, self.basis, self.mult, self.grading, self.involution, self.unit, self.summands)

    # sparse kernels used by evaluation
    def mul_sparse(self, u: Mapping[int, object], v: Mapping[int, object]) -> Sparse:
        out: dict = {}
        mult = self.mult
        for i, a in u.items():
            for j, b in v.items():
                prod = mult.get((i, j))
                ab = a * b
                if prod and ab:
                    for k, c in prod.items():
                        nv = out.get(k, 0) + ab * c
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
        return out

    def star_sparse(self, u: Mapping[int, object]) -> Sparse:
        out: dict = {}
        for i, a in u.items():
            _add_into(out, self.involution[i], a)
        return out

    def parity_of(self, u: Mapping[int, object]) -> int | None:
        """Parity of a homogeneous vector, None if mixed or zero."""
        ps = {self.grading[k] for k, v in u.items() if v}
        return ps.pop() if len(ps) == 1 else None

    def unit_sparse(self) -> Sparse | None:
        return None if self.unit is None else _sparse(self.unit)


class Violation(NamedTuple):
    axiom: str
    witness: tuple  # basis indices

    def __str__(self) -> str:
        return f"{self.axiom} at {self.witness}"


class ComponentBases(NamedTuple):
    """Row bases of A_0^+, A_0^-, A_1^+, A_1^- (each a tuple of sparse vectors)."""

    even_sym: tuple
    even_skew: tuple
    odd_sym: tuple
    odd_skew: tuple

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return tuple(len(b) for b in self)

    def by_slot(self, slot: int) -> tuple:
        return self[slot]


def _e(i: int) -> Sparse:
    return {i: 1}


def validate(A: StarAlgebra) -> list[Violation]:
    """All axiom violations; empty iff A is an associative superalgebra with superinvolution."""
    out: list[Violation] = []
    d = A.dim
    g = A.grading
    for i in range(d):
        for j in range(d):
            eij = A.mult.get((i, j), {})
            for k in eij:
                if g[k] != (g[i] + g[j]) % 2:
                    out.append(Violation("grading", (i, j)))
                    break
    for i in range(d):
        for j in range(d):
            eij = A.mult.get((i, j), {})
            for k in range(d):
                left = A.mul_sparse(eij, _e(k))
                right = A.mul_sparse(_e(i), A.mult.get((j, k), {}))
                if left != right:
                    out.append(Violation("associativity", (i, j, k)))
    for i in range(d):
        img = A.involution[i]
        if any(g[k] != g[i] for k in img):
            out.append(Violation("involution-parity", (i,)))
        if A.star_sparse(img) != _e(i):
            out.append(Violation("involutive", (i,)))
    for i in range(d):
        for j in range(d):
            lhs = A.star_sparse(A.mult.get((i, j), {}))
            rhs = A.mul_sparse(A.involution[j], A.involution[i])
            if g[i] and g[j]:
                rhs = {k: -v for k, v in rhs.items()}
            if lhs != rhs:
                out.append(Violation("antihomomorphism", (i, j)))
    if A.unit is not None:
        u = A.unit_sparse()
        if any(g[k] for k in u):
            out.append(Violation("unit-parity", tuple(sorted(u))))
        if A.star_sparse(u) != u:
            out.append(Violation("unit-symmetric", tuple(sorted(u))))
        for i in range(d):
            if A.mul_sparse(u, _e(i)) != _e(i) or A.mul_sparse(_e(i), u) != _e(i):
                out.append(Violation("unit", (i,)))
    return out


def _require_valid(A: StarAlgebra) -> None:
    v = validate(A)
    if v:
        raise InvalidAlgebraError(f"{A.name}: {v[0]}")


def components(A: StarAlgebra) -> ComponentBases:
    """Bases of the four homogeneous symmetric/skew components, each in rref."""
    if "components" in A._cache:
        return A._cache["components"]
    _require_valid(A)
    d = A.dim
    parts = []
    for parity in (0, 1):
        for sign in (1, -1):
            rows = []
            for i in range(d):
                if A.grading[i] != parity:
                    continue
                v = dict(_e(i))
                _add_into(v, A.involution[i], sign)
                rows.append(_dense(v, d))
            if rows:
                red, piv = rref(RatMatrix(rows, d))
                parts.append(tuple(_sparse(r) for r in red[: len(piv)]))
            else:
                parts.append(())
    comp = ComponentBases(*parts)
    A._cache["components"] = comp
    return comp


def _check_len(A: StarAlgebra, u: Sequence) -> None:
    if len(u) != A.dim:
        raise ValueError(f"vector of length {len(u)} for algebra of dimension {A.dim}")


def multiply(A: StarAlgebra, u: Sequence, v: Sequence) -> tuple:
    _check_len(A, u)
    _check_len(A, v)
    return _dense(A.mul_sparse(_sparse(u), _sparse(v)), A.dim)


def star(A: StarAlgebra, u: Sequence) -> tuple:
    _check_len(A, u)
    return _dense(A.star_sparse(_sparse(u)), A.dim)


def _flat_summands(A: StarAlgebra, offset: int) -> list[tuple[int, int]]:
    if A.summands is None:
        return [(offset, offset + A.dim)]
    return [(a + offset, b + offset) for a, b in A.summands]


def direct_sum(A: StarAlgebra, B: StarAlgebra, name: str | None = None) -> StarAlgebra:
    """Block-diagonal sum.  A unit (pair of units) is recorded only when both summands have one."""
    da = A.dim
    mult = dict(A.mult)
    for (i, j), vec in B.mult.items():
        mult[(i + da, j + da)] = {k + da: c for k, c in vec.items()}
    inv = list(A.involution) + [{k + da: c for k, c in r.items()} for r in B.involution]
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = tuple(A.unit) + tuple(B.unit)
    basis = tuple(f"{b}@1" for b in A.basis) + tuple(f"{b}@2" for b in B.basis)
    return StarAlgebra(
        name or f"{A.name}+{B.name}",
        basis,
        mult,
        A.grading + B.grading,
        tuple(inv),
        unit,
        tuple(_flat_summands(A, 0) + _flat_summands(B, da)),
    )


def unitarize(A: StarAlgebra, name: str | None = None) -> StarAlgebra:
    """A x F with (a, s)(b, t) = (ab + s b + t a, s t); the new basis element is last."""
    d = A.dim
    mult = dict(A.mult)
    for i in range(d):
        mult[(d, i)] = {i: 1}
        mult[(i, d)] = {i: 1}
    mult[(d, d)] = {d: 1}
    unit = tuple([0] * d + [1])
    return StarAlgebra(
        name or f"{A.name}~",
        A.basis + ("1",),
        mult,
        A.grading + (0,),
        A.involution + ({d: 1},),
        unit,
    )


def _closure(A: StarAlgebra, seed: Iterable[Mapping], step) -> list[dict]:
    ech = RowEchelon(A.dim)
    queue = []
    for v in seed:
        if ech.insert(v):
            queue.append(dict(v))
    while queue:
        v = queue.pop()
        for w in step(v, ech):
            if ech.insert(w):
                queue.append(w)
    return [_clean(r) for r in ech.basis()]


def ideal_closure(A: StarAlgebra, gens: Iterable[Sequence | Mapping]) -> list[dict]:
    """Smallest two-sided *-closed ideal containing ``gens`` (rref sparse rows)."""
    seed = [g if isinstance(g, Mapping) else _sparse(g) for g in gens]

    def step(v, _):
        yield A.star_sparse(v)
        for i in range(A.dim):
            yield A.mul_sparse(_e(i), v)
            yield A.mul_sparse(v, _e(i))

    return _closure(A, seed, step)


def subalgebra_closure(A: StarAlgebra, gens: Iterable[Sequence | Mapping], with_unit: bool = False) -> list[dict]:
    """Smallest *-closed subalgebra containing ``gens`` (and the unit if requested)."""
    seed = [g if isinstance(g, Mapping) else _sparse(g) for g in gens]
    if with_unit:
        if A.unit is None:
            raise InvalidAlgebraError(f"{A.name} has no unit")
        seed.append(A.unit_sparse())
    found: list[dict] = []

    def step(v, _):
        found.append(v)
        yield A.star_sparse(v)
        for w in list(found):
            yield A.mul_sparse(v, w)
            yield A.mul_sparse(w, v)

    return _closure(A, seed, step)


def _homogeneous_parts(A: StarAlgebra, v: Mapping) -> list[dict]:
    parts: dict[int, dict] = {}
    for k, c in v.items():
        parts.setdefault(A.grading[k], {})[k] = c
    return list(parts.values())


def quotient(A: StarAlgebra, ideal: Iterable[Sequence | Mapping], name: str | None = None) -> StarAlgebra:
    """A / I on the basis of non-pivot coordinates of the rref of I."""
    rows = [r if isinstance(r, Mapping) else _sparse(r) for r in ideal]
    ech = RowEchelon.from_rows(rows, A.dim)
    for r in ech.basis():
        for i in range(A.dim):
            if not ech.contains(A.mul_sparse(_e(i), r)) or not ech.contains(A.mul_sparse(r, _e(i))):
                raise InvalidAlgebraError("subspace is not a two-sided ideal")
        if not ech.contains(A.star_sparse(r)):
            raise InvalidAlgebraError("subspace is not closed under the involution")
        if any(not ech.contains(p) for p in _homogeneous_parts(A, r)):
            raise InvalidAlgebraError("subspace is not homogeneous")
    pivots = set(ech.pivots)
    keep = [i for i in range(A.dim) if i not in pivots]
    pos = {j: n for n, j in enumerate(keep)}

    def red(v):
        return {pos[k]: c for k, c in ech.reduce(v).items()}

    mult = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            p = red(A.mult.get((i, j), {}))
            if p:
                mult[(a, b)] = p
    inv = tuple(red(A.involution[i]) for i in keep)
    unit = None
    if A.unit is not None and keep:
        u = red(A.unit_sparse())
        unit = _dense(u, len(keep))
    return StarAlgebra(
        name or f"{A.name}/I",
        tuple(A.basis[i] for i in keep),
        mult,
        tuple(A.grading[i] for i in keep),
        inv,
        unit,
    )


# JSON interchange


def _vec_json(vec: Mapping) -> list:
    return [[k, format_rational(v)] for k, v in sorted(vec.items()) if v]


def to_json_dict(A: StarAlgebra) -> dict:
    return {
        "name": A.name,
        "dim": A.dim,
        "basis": list(A.basis),
        "unit": None if A.unit is None else [format_rational(x) for x in A.unit],
        "grading": list(A.grading),
        "mult": [[i, j, _vec_json(v)] for (i, j), v in sorted(A.mult.items())],
        "involution": [[i, _vec_json(r)] for i, r in enumerate(A.involution)],
    }


def from_json_dict(data: Mapping) -> StarAlgebra:
    try:
        d = int(data["dim"])
        basis = list(data.get("basis") or [f"e{i}" for i in range(d)])
        if len(basis) != d:
            raise InvalidAlgebraError("basis length differs from dim")
        mult = {}
        for i, j, vec in data.get("mult", []):
            mult[(int(i), int(j))] = {int(k): parse_rational(c) for k, c in vec}
        inv = [dict() for _ in range(d)]
        for i, vec in data.get("involution", []):
            inv[int(i)] = {int(k): parse_rational(c) for k, c in vec}
        unit = data.get("unit")
        if unit is not None:
            unit = [parse_rational(x) for x in unit]
        return StarAlgebra(str(data["name"]), tuple(basis), mult, tuple(int(x) for x in data["grading"]), tuple(inv), unit)
    except (KeyError, TypeError) as exc:
        raise InvalidAlgebraError(f"malformed algebra JSON: {exc}") from None


def load_json(path: str) -> StarAlgebra:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def dump_json(A: StarAlgebra, path: str | None = None) -> str:
    text = json.dumps(to_json_dict(A), indent=2)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def relabel(A: StarAlgebra, order: Sequence[int], name: str | None = None) -> StarAlgebra:
    """Same algebra with basis element ``order[k]`` moved to position k."""
    order = list(order)
    if sorted(order) != list(range(A.dim)):
        raise ValueError("order must be a permutation of the basis indices")
    new = {old: k for k, old in enumerate(order)}

    def mv(vec):
        return {new[k]: c for k, c in vec.items()}

    mult = {(new[i], new[j]): mv(v) for (i, j), v in A.mult.items()}
    inv = tuple(mv(A.involution[old]) for old in order)
    unit = None if A.unit is None else tuple(A.unit[old] for old in order)
    return StarAlgebra(name or A.name, tuple(A.basis[o] for o in order), mult, tuple(A.grading[o] for o in order), inv, unit)


def same_structure(A: StarAlgebra, B: StarAlgebra) -> bool:
    """Identical structure constants, grading, involution and unit (labels ignored)."""
    return (
        A.dim == B.dim
        and A.grading == B.grading
        and A.mult == B.mult
        and A.involution == B.involution
        and A.unit == B.unit
    )
