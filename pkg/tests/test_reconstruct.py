from __future__ import annotations

import pytest

from pistar.catalog import KEYS, SUM_KEYS, catalog, resolve
from pistar.cocharacter import Multipartition, cocharacter_table
from pistar.codim import codim
from pistar.reconstruct import Ambiguity, ProfileError, build_sum, reconstruct, roundtrip

mp = Multipartition.parse


def test_empty_profile():
    assert reconstruct({}) == ["F"]


def test_double_entry_forces_the_sum():
    profile = {mp("(1)_0-"): 1, mp("(1)_1+"): 1, mp("(1)_1-"): 1, mp("(1)_0- x (1)_1+"): 2}
    blocks = reconstruct(profile)
    assert "G2_gamma_gri+W_eta1_gri" in blocks
    assert all(not isinstance(b, Ambiguity) for b in blocks)


def test_N3_star():
    # the degree-1 skew entry brings its C2 block along
    assert reconstruct(cocharacter_table(catalog("N3_star"))) == ["C2_star", "N3_star"]


def test_ambiguity_is_reported():
    blocks = reconstruct(cocharacter_table(catalog("W_eta2_gr")))
    (amb,) = [b for b in blocks if isinstance(b, Ambiguity)]
    assert set(amb.options) == {"G2_gamma_gr", "W_eta2_gr"}
    assert str(amb) == "{G2_gamma_gr | W_eta2_gr}"


def test_profile_errors():
    with pytest.raises(ProfileError):
        reconstruct({mp("(1)_0-"): 2})
    with pytest.raises(ProfileError):
        reconstruct({mp("(1)_0+ x (1)_1-"): 2})


@pytest.mark.parametrize("key", KEYS + SUM_KEYS)
def test_every_block_reconstructs_itself(key):
    r = roundtrip(resolve(key), 5)
    assert r.ok, r
    if key != "F":
        assert key in r.chosen


@pytest.mark.parametrize(
    "key, must_contain",
    [
        ("N3_gri+C3_i2", {"N3_gri", "C3_i2"}),
        ("G2_gamma_gri+W_eta1_gri", {"G2_gamma_gri+W_eta1_gri"}),
        ("W_eta2_gr", {"W_eta2_gr"}),
        ("U3_star+G2_tau_gri+C3_i1_gr", {"U3_star", "G2_tau_gri", "C3_i1_gr"}),
        ("F", {"F"}),
    ],
)
def test_composite_roundtrips(key, must_contain):
    r = roundtrip(resolve(key), 5)
    assert r.ok
    assert must_contain <= set(r.chosen)
    assert r.c_input == r.c_rebuilt


def test_W_eta2_resolution_rejects_G2():
    r = roundtrip(catalog("W_eta2_gr"), 5)
    assert r.candidates["G2_gamma_gr"][0] != "member"
    assert r.candidates["G2_gamma_gr"] != r.c_input


def test_build_sum():
    B = build_sum(["C2_star", "C3_i2"])
    assert B.dim == 5 and B.name == "C2_star + C3_i2"
    assert codim(B, 3) == codim(resolve("C2_star+C3_i2"), 3)
