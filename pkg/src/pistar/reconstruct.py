"""From a degree <= 2 multiplicity profile back to catalog building blocks.

Each nonzero multiplicity forces a specific catalog algebra into the variety.
For a mixed pair of non-symmetric-even types with multiplicity 1 there are
two candidates with the same profile; that case is returned as an
:class:`Ambiguity` and settled by :func:`roundtrip` using a bounded variety
membership test followed by codimension agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .catalog import resolve
from .cocharacter import Multipartition, MultiplicityTable, cocharacter_table, hwv_catalog
from .codim import codim, in_variety
from .star_algebra import StarAlgebra, direct_sum

__all__ = [
    "Ambiguity",
    "ProfileError",
    "RoundtripResult",
    "BLOCKS",
    "reconstruct",
    "roundtrip",
    "build_sum",
]


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class Ambiguity:
    options: tuple
    source: str

    def __str__(self) -> str:
        return "{" + " | ".join(self.options) + "}"


Block = Union[str, Ambiguity]

_mp = Multipartition.parse

# multiplicity 1 entries
BLOCKS: dict[Multipartition, Block] = {
    _mp("(1)_0-"): "C2_star",
    _mp("(1)_1+"): "C2_gr",
    _mp("(1)_1-"): "C2_star_gr",
    _mp("(2)_0-"): "C3_i2",
    _mp("(2)_1+"): "C3_i1_gr",
    _mp("(2)_1-"): "C3_i3_gr",
    _mp("(1,1)_0+"): "U3_star",
    _mp("(1,1)_0-"): "G2_tau",
    _mp("(1,1)_1+"): "G2_psi_gr",
    _mp("(1,1)_1-"): "G2_tau_gr",
    _mp("(1)_0+ x (1)_1+"): "U3_gri",
    _mp("(1)_0+ x (1)_0-"): "N3_star",
    _mp("(1)_0+ x (1)_1-"): "N3_gri",
    _mp("(1)_0- x (1)_1+"): Ambiguity(("G2_gamma_gri", "W_eta1_gri"), "(1)_0- x (1)_1+"),
    _mp("(1)_1+ x (1)_1-"): Ambiguity(("G2_gamma_gr", "W_eta2_gr"), "(1)_1+ x (1)_1-"),
    _mp("(1)_0- x (1)_1-"): Ambiguity(("G2_tau_gri", "W_eta3_gri"), "(1)_0- x (1)_1-"),
}

# multiplicity 2 entries force both candidates at once
DOUBLE: dict[Multipartition, str] = {
    _mp("(1)_0- x (1)_1+"): "G2_gamma_gri+W_eta1_gri",
    _mp("(1)_1+ x (1)_1-"): "G2_gamma_gr+W_eta2_gr",
    _mp("(1)_0- x (1)_1-"): "G2_tau_gri+W_eta3_gri",
}


def _entries(profile: MultiplicityTable | Mapping[Multipartition, int]) -> dict[Multipartition, int]:
    if isinstance(profile, MultiplicityTable):
        return profile.nonzero()
    return {mp: m for mp, m in profile.items() if m}


def reconstruct(profile: MultiplicityTable | Mapping[Multipartition, int]) -> list[Block]:
    """Building blocks dictated by the nonzero multiplicities (``["F"]`` if none)."""
    entries = _entries(profile)
    out: list[Block] = []
    for mp in sorted(entries, key=lambda m: (m.degree, m.signature[::-1], m.parts)):
        m = entries[mp]
        bound = len(hwv_catalog(mp))
        if m < 0 or m > bound:
            raise ProfileError(f"multiplicity {m} for {mp} exceeds the bound {bound}")
        block = DOUBLE.get(mp) if m == 2 else BLOCKS.get(mp)
        if block is None:
            raise ProfileError(f"no building block for {mp} with multiplicity {m}")
        if block not in out:
            out.append(block)
    return out or ["F"]


def build_sum(keys: Sequence[str]) -> StarAlgebra:
    out = resolve(keys[0])
    for k in keys[1:]:
        out = direct_sum(out, resolve(k))
    return out.renamed(" + ".join(keys))


@dataclass
class RoundtripResult:
    algebra: str
    blocks: list
    chosen: list
    c_input: list
    c_rebuilt: list
    candidates: dict

    @property
    def ok(self) -> bool:
        return bool(self.chosen) and self.c_input == self.c_rebuilt


def roundtrip(A: StarAlgebra, N: int = 5, membership_degree: int = 3) -> RoundtripResult:
    """Reconstruct A's blocks, resolve ambiguities, and compare codimensions up to N."""
    blocks = reconstruct(cocharacter_table(A))
    c_in = [codim(A, n) for n in range(1, N + 1)]
    chosen: list[str] = []
    candidates: dict[str, list] = {}
    for b in blocks:
        if isinstance(b, str):
            chosen.append(b)
            continue
        picked = None
        for opt in b.options:
            cand = resolve(opt)
            seq = [codim(cand, n) for n in range(1, N + 1)]
            member = in_variety(cand, A, membership_degree)
            candidates[opt] = seq if not member else ["member"] + seq
            if member and picked is None:
                picked = opt
        if picked is None:
            return RoundtripResult(A.name, blocks, [], c_in, [], candidates)
        chosen.append(picked)
    B = build_sum(chosen)
    c_out = [codim(B, n) for n in range(1, N + 1)]
    return RoundtripResult(A.name, blocks, chosen, c_in, c_out, candidates)
