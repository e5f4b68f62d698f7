"""Exact computations with finite-dimensional superalgebras with superinvolution."""

from __future__ import annotations

from .catalog import KEYS, SUM_KEYS, catalog, make_NU, resolve
from .cocharacter import Multipartition, cocharacter_table, codim_from_table, hwv_catalog, multiplicity
from .codim import codim, identity_space, proper_from_codim, proper_signature_codim, signature_codim
from .free_star import Polynomial, VarType, evaluate, is_identity, multilinear_basis, star_free
from .parser import format_polynomial, parse
from .star_algebra import StarAlgebra, components, direct_sum, unitarize, validate

__version__ = "0.1.0"

__all__ = [
    "KEYS",
    "SUM_KEYS",
    "catalog",
    "make_NU",
    "resolve",
    "Multipartition",
    "cocharacter_table",
    "codim_from_table",
    "hwv_catalog",
    "multiplicity",
    "codim",
    "identity_space",
    "proper_from_codim",
    "proper_signature_codim",
    "signature_codim",
    "Polynomial",
    "VarType",
    "evaluate",
    "is_identity",
    "multilinear_basis",
    "star_free",
    "format_polynomial",
    "parse",
    "StarAlgebra",
    "components",
    "direct_sum",
    "unitarize",
    "validate",
]
