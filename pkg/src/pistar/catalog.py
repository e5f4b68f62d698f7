"""Named algebras, built from matrix units and Grassmann relations.

Structure constants are never typed by hand: each entry is a span of explicit
matrices (or Grassmann monomials) and products/involution images are solved
for in that basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .exact import RatMatrix, rref
from .star_algebra import InvalidAlgebraError, StarAlgebra, direct_sum, validate

__all__ = [
    "KEYS",
    "SUM_KEYS",
    "catalog",
    "resolve",
    "make_NU",
    "from_matrices",
    "grassmann2",
    "UnknownAlgebraError",
]

Mat = dict  # (row, col) -> coefficient, 1-based indices


class UnknownAlgebraError(KeyError):
    pass


def _mat_mul(a: Mat, b: Mat) -> Mat:
    out: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    return {k: v for k, v in out.items() if v}


def _mat(*terms) -> Mat:
    """_mat((1, 2, 1), (5, 6, -1)) is e12 - e56."""
    return {(i, j): c for i, j, c in terms}


def _identity(n: int) -> Mat:
    return {(i, i): 1 for i in range(1, n + 1)}


def _add(a: Mat, b: Mat, c=1) -> Mat:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


class _Coords:
    """Solves for coordinates of a matrix in a fixed linearly independent list."""

    def __init__(self, mats: Sequence[Mat]):
        self.keys = sorted({k for m in mats for k in m})
        self.d = len(mats)
        # augmented system: rows are matrix entries, columns the unknowns
        cols = [[m.get(k, 0) for k in self.keys] for m in mats]
        self.a = [[cols[j][r] for j in range(self.d)] for r in range(len(self.keys))]
        red, piv = rref(RatMatrix(self.a, self.d)) if self.keys else (RatMatrix([], self.d), [])
        if len(piv) != self.d:
            raise InvalidAlgebraError("basis matrices are linearly dependent")

    def __call__(self, m: Mat) -> dict[int, Fraction]:
        if any(k not in self.keys for k in m):
            raise InvalidAlgebraError(f"matrix {m} lies outside the span")
        rows = [r + [m.get(k, 0)] for r, k in zip(self.a, self.keys)]
        red, piv = rref(RatMatrix(rows, self.d + 1))
        if self.d in piv:
            raise InvalidAlgebraError(f"matrix {m} lies outside the span")
        return {piv[i]: red[i][self.d] for i in range(len(piv)) if red[i][self.d]}


def from_matrices(
    name: str,
    labels: Sequence[str],
    mats: Sequence[Mat],
    grading: Sequence[int],
    star: Callable[[int, Mat], Mat],
    unit_index: int | None = 0,
) -> StarAlgebra:
    """Algebra spanned by ``mats``; ``star(i, m)`` gives the image of basis element i."""
    coords = _Coords(mats)
    d = len(mats)
    mult = {}
    for i in range(d):
        for j in range(d):
            p = _mat_mul(mats[i], mats[j])
            if p:
                mult[(i, j)] = coords(p)
    inv = tuple(coords(star(i, mats[i])) for i in range(d))
    unit = None
    if unit_index is not None:
        unit = [0] * d
        unit[unit_index] = 1
    return StarAlgebra(name, tuple(labels), mult, tuple(grading), inv, unit)


def _signs(signs: Sequence[int]) -> Callable[[int, Mat], Mat]:
    return lambda i, m: {k: signs[i] * v for k, v in m.items()}


def _checked(A: StarAlgebra) -> StarAlgebra:
    bad = validate(A)
    if bad:
        raise InvalidAlgebraError(f"{A.name}: {bad[0]}")
    return A


# C2 and C3


def _c2(name: str, grading, signs) -> StarAlgebra:
    return from_matrices(name, ("I", "e12"), [_identity(2), _mat((1, 2, 1))], grading, _signs(signs))


def _c3(name: str, grading, signs) -> StarAlgebra:
    a = _mat((1, 2, 1), (2, 3, 1))
    return from_matrices(name, ("I", "a", "a^2"), [_identity(3), a, _mat_mul(a, a)], grading, _signs(signs))


# Grassmann algebra on two generators


def grassmann2(name: str, gen_parity: Sequence[int], gen_sign: Sequence[int]) -> StarAlgebra:
    """Span of 1, e1, e2, e1e2 with e_i e_j = -e_j e_i.

    Generator parities and involution signs are given; the image of e1e2 is
    forced by the super-antihomomorphism rule.
    """
    mult = {}
    # basis index: 0 -> 1, 1 -> e1, 2 -> e2, 3 -> e1e2
    for i in range(4):
        mult[(0, i)] = {i: 1}
        mult[(i, 0)] = {i: 1}
    mult[(1, 2)] = {3: 1}
    mult[(2, 1)] = {3: -1}
    p1, p2 = gen_parity
    s1, s2 = gen_sign
    # (e1 e2)* = (-1)^{|e1||e2|} e2* e1* = (-1)^{p1 p2} s1 s2 e2 e1 = -(-1)^{p1 p2} s1 s2 e1e2
    s12 = -((-1) ** (p1 * p2)) * s1 * s2
    inv = ({0: 1}, {1: s1}, {2: s2}, {3: s12})
    grading = (0, p1, p2, (p1 + p2) % 2)
    return StarAlgebra(name, ("1", "e1", "e2", "e1e2"), mult, grading, inv, (1, 0, 0, 0))


# W = span{I, b, c, d} inside UT_4


def _w(name: str, grading, signs) -> StarAlgebra:
    mats = [
        _identity(4),
        _mat((1, 2, 1), (3, 4, 1)),
        _mat((1, 3, 1), (2, 4, 1)),
        _mat((1, 4, 1)),
    ]
    return from_matrices(name, ("I", "b", "c", "d"), mats, grading, _signs(signs))


# N_m and U_m inside UT_{2m}


def _reflect(n: int) -> Callable[[int, Mat], Mat]:
    return lambda i, m: {(n + 1 - j, n + 1 - i2): v for (i2, j), v in m.items()}


def make_NU(m: int, kind: str, parities: Sequence[int] | None = None, name: str | None = None) -> StarAlgebra:
    """N_m (kind "N") or U_m (kind "U") with the reflection superinvolution.

    ``parities`` gives an elementary grading of UT_{2m}; None means trivial.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if kind not in ("N", "U"):
        raise ValueError("kind must be 'N' or 'U'")
    n = 2 * m
    if parities is not None:
        parities = tuple(parities)
        if len(parities) != n or any(p not in (0, 1) for p in parities):
            raise ValueError(f"parity tuple must have {n} entries in {{0, 1}}")
        sums = {(parities[i] + parities[n - 1 - i]) % 2 for i in range(m)}
        if len(sums) != 1:
            raise ValueError("parity tuple violates g_1 + g_n = g_2 + g_(n-1) = ...")
    E: Mat = {}
    for i in range(2, m):
        E = _add(E, _mat((i, i + 1, 1), (n - i, n - i + 1, 1)))
    sign = -1 if kind == "N" else 1
    mats = [_identity(n)]
    labels = [f"I{n}"]
    power = E
    for k in range(1, m - 1):
        mats.append(power)
        labels.append("E" if k == 1 else f"E^{k}")
        power = _mat_mul(power, E)
    mats.append(_mat((1, 2, 1), (n - 1, n, sign)))
    labels.append(f"e12{'-' if sign < 0 else '+'}e{n - 1}{n}")
    for j in range(3, m + 1):
        mats.append(_mat((1, j, 1)))
        labels.append(f"e1{j}")
    for i in range(m + 1, n - 1):
        mats.append(_mat((i, n, 1)))
        labels.append(f"e{i}{n}")
    if parities is None:
        grading = [0] * len(mats)
    else:
        grading = []
        for mat in mats:
            ps = {(parities[i - 1] + parities[j - 1]) % 2 for (i, j) in mat}
            if len(ps) != 1:
                raise ValueError("grading does not make the spanning elements homogeneous")
            grading.append(ps.pop())
    suffix = "" if parities is None else "_gr"
    return from_matrices(name or f"{kind}{m}{suffix}", labels, mats, grading, _reflect(n))


GRI = (0, 1, 1, 0, 0, 1)

_BUILDERS: dict[str, Callable[[], StarAlgebra]] = {
    "F": lambda: StarAlgebra("F", ("1",), {(0, 0): {0: 1}}, (0,), ({0: 1},), (1,)),
    "C2_star": lambda: _c2("C2_star", (0, 0), (1, -1)),
    "C2_gr": lambda: _c2("C2_gr", (0, 1), (1, 1)),
    "C2_star_gr": lambda: _c2("C2_star_gr", (0, 1), (1, -1)),
    "C3_i2": lambda: _c3("C3_i2", (0, 0, 0), (1, -1, 1)),
    "C3_i1_gr": lambda: _c3("C3_i1_gr", (0, 1, 0), (1, 1, -1)),
    "C3_i3_gr": lambda: _c3("C3_i3_gr", (0, 1, 0), (1, -1, -1)),
    "G2_tau": lambda: grassmann2("G2_tau", (0, 0), (-1, -1)),
    "G2_psi_gr": lambda: grassmann2("G2_psi_gr", (1, 1), (1, 1)),
    "G2_tau_gr": lambda: grassmann2("G2_tau_gr", (1, 1), (-1, -1)),
    "G2_gamma_gr": lambda: grassmann2("G2_gamma_gr", (1, 1), (-1, 1)),
    "G2_tau_gri": lambda: grassmann2("G2_tau_gri", (0, 1), (-1, -1)),
    "G2_gamma_gri": lambda: grassmann2("G2_gamma_gri", (0, 1), (-1, 1)),
    "W_eta2_gr": lambda: _w("W_eta2_gr", (0, 1, 1, 0), (1, -1, 1, 1)),
    "W_eta1_gri": lambda: _w("W_eta1_gri", (0, 0, 1, 1), (1, -1, 1, -1)),
    "W_eta3_gri": lambda: _w("W_eta3_gri", (0, 0, 1, 1), (1, -1, -1, 1)),
    "N3_star": lambda: make_NU(3, "N", None, "N3_star"),
    "U3_star": lambda: make_NU(3, "U", None, "U3_star"),
    "N3_gri": lambda: make_NU(3, "N", GRI, "N3_gri"),
    "U3_gri": lambda: make_NU(3, "U", GRI, "U3_gri"),
}

KEYS: tuple[str, ...] = tuple(_BUILDERS)

# the three direct sums with c_n = 1 + 3n + 4 C(n,2)
SUM_KEYS: tuple[str, ...] = ("G2_gamma_gri+W_eta1_gri", "G2_gamma_gr+W_eta2_gr", "G2_tau_gri+W_eta3_gri")


@lru_cache(maxsize=None)
def catalog(key: str) -> StarAlgebra:
    """The named algebra (cached; StarAlgebra values are immutable)."""
    if key not in _BUILDERS:
        raise UnknownAlgebraError(f"unknown algebra {key!r}; known: {', '.join(KEYS)}")
    return _checked(_BUILDERS[key]())


@lru_cache(maxsize=None)
def resolve(text: str) -> StarAlgebra:
    """Catalog key or ``+``-separated direct sum of keys, e.g. ``"N3_gri+C3_i2"``."""
    parts = [p.strip() for p in text.split("+") if p.strip()]
    if not parts:
        raise UnknownAlgebraError("empty algebra name")
    out = catalog(parts[0])
    for p in parts[1:]:
        out = direct_sum(out, catalog(p))
    if len(parts) > 1:
        out = out.renamed("+".join(parts))
    return out


def describe(A: StarAlgebra) -> Mapping[str, object]:
    from .star_algebra import components

    comp = components(A)
    return {
        "name": A.name,
        "dim": A.dim,
        "basis": list(A.basis),
        "grading": list(A.grading),
        "unitary": A.is_unitary,
        "component_dims": list(comp.dims),
    }
