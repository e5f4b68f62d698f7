from __future__ import annotations

from math import comb

import pytest

from pistar.catalog import KEYS, catalog, resolve
from pistar.codim import (
    UnsupportedDegreeError,
    codim,
    codim_sequence,
    crosscheck_eq1_eq3,
    identity_polynomials,
    identity_space,
    in_variety,
    polynomial_vector,
    proper_from_codim,
    proper_signature_codim,
    signature_codim,
)
from pistar.free_star import is_identity, signatures


@pytest.mark.parametrize(
    "key, sig, expected",
    [
        ("C2_star", (0, 1, 0, 0), 1),
        ("F", (1, 0, 0, 0), 1),
        ("F", (3, 0, 0, 0), 1),
        ("F", (4, 0, 0, 0), 1),
        ("N3_gri", (1, 0, 0, 1), 2),
        # a type with no component gives an empty column set
        ("C2_star", (0, 0, 1, 0), 0),
    ],
)
def test_signature_codim(key, sig, expected):
    assert signature_codim(catalog(key), sig).codim == expected


@pytest.mark.parametrize(
    "key, n, expected",
    [("U3_star", 3, 7), ("G2_gamma_gr", 2, 9), ("G2_gamma_gri+W_eta1_gri", 3, 22), ("G2_gamma_gri+W_eta1_gri", 2, 11)],
)
def test_codim(key, n, expected):
    assert codim(resolve(key), n) == expected


def test_codim_zero():
    assert codim(catalog("N3_star"), 0) == 1


@pytest.mark.parametrize(
    "c, gamma",
    [([1, 2, 3, 4], [1, 1, 0, 0]), ([1, 3, 7, 13], [1, 2, 2, 0]), ([1, 1, 1, 1], [1, 0, 0, 0])],
)
def test_proper_from_codim(c, gamma):
    assert proper_from_codim(c) == gamma


def test_proper_from_codim_negative():
    with pytest.raises(ValueError):
        proper_from_codim([1, 3, 4])


@pytest.mark.parametrize(
    "key, sig, expected",
    [
        # two monomials but e1 e2 = -e2 e1, so one independent value
        ("G2_tau", (0, 2, 0, 0), 1),
        ("F", (2, 0, 0, 0), 0),
        ("F", (0, 0, 1, 1), 0),
        # one per ordering class; the signature has multinomial weight 2, so gamma_2 = 2
        ("W_eta2_gr", (0, 0, 1, 1), 1),
    ],
)
def test_proper_signature_codim(key, sig, expected):
    assert proper_signature_codim(catalog(key), sig) == expected


def test_proper_degree_cap():
    with pytest.raises(UnsupportedDegreeError):
        proper_signature_codim(catalog("F"), (3, 0, 0, 0))


@pytest.mark.parametrize(
    "key, gamma",
    [("U3_star", [1, 1, 1]), ("F", [1, 0, 0]), ("G2_gamma_gri+W_eta1_gri", [1, 3, 4])],
)
def test_crosscheck(key, gamma):
    r = crosscheck_eq1_eq3(resolve(key), 2)
    assert r.ok
    assert r.gamma_eq1 == gamma == r.gamma_eq3


@pytest.mark.parametrize(
    "key, sig, dim",
    [("C2_star", (0, 2, 0, 0), 2), ("F", (2, 0, 0, 0), 1), ("W_eta2_gr", (0, 0, 2, 0), 2)],
)
def test_identity_space(key, sig, dim):
    assert identity_space(catalog(key), sig).rows == dim


@pytest.mark.parametrize("key", ["C2_star", "N3_gri", "G2_gamma_gr", "W_eta1_gri"])
def test_identity_polynomials_vanish(key):
    A = catalog(key)
    for sig in signatures(2):
        polys = identity_polynomials(A, sig)
        assert len(polys) == identity_space(A, sig).rows
        for p in polys:
            assert is_identity(A, p)
            assert polynomial_vector(p, sig)


def test_codim_plus_identities_is_full(catalog_key):
    A = catalog(catalog_key)
    for sig in signatures(2):
        rec = signature_codim(A, sig)
        assert rec.codim + rec.identity_dim == rec.pn_dim == 2


def test_in_variety():
    assert in_variety(catalog("C2_star"), catalog("U3_star"))
    assert not in_variety(catalog("U3_star"), catalog("C2_star"))
    assert in_variety(catalog("F"), catalog("W_eta2_gr"))
    assert in_variety(catalog("W_eta2_gr"), resolve("G2_gamma_gr+W_eta2_gr"))


def test_codim_sequence():
    seq = codim_sequence(catalog("W_eta2_gr"), 4, per_signature=True)
    assert list(seq.c) == [1 + 2 * n + 2 * comb(n, 2) for n in range(5)]
    assert list(seq.gamma) == [1, 2, 2, 0, 0]
    assert len(seq.per_signature) == sum(len(signatures(n)) for n in range(1, 5))
    assert seq.to_json()["algebra"] == "W_eta2_gr"


def test_non_unitary_has_no_gamma():
    from pistar.star_algebra import StarAlgebra

    nil = StarAlgebra("nil", ("b",), {}, (0,), ({0: -1},))
    assert codim_sequence(nil, 3).gamma is None


@pytest.mark.parametrize("key", KEYS)
def test_degree_two_codim_bound(key):
    # c_n is bounded by the number of multilinear monomials
    assert 1 <= codim(catalog(key), 2) <= 4**2 * 2
