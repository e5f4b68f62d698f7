from __future__ import annotations

import pytest

from pistar.catalog import catalog, resolve
from pistar.codim import identity_space, signature_codim
from pistar.exact import subspace_contains
from pistar.free_star import MultilinearityError, signatures
from pistar.parser import parse
from pistar.tideal import MAX_DEGREE, GeneratorSet, consequences, verify_tideal
from pistar.verify import GENERATOR_SETS

W_SET = GENERATOR_SETS["L3.4.1"][0][1]
C3_SET = GENERATOR_SETS["L3.2.1"][0][1]


def test_generator_set_closes_under_star():
    gs = GeneratorSet.parse(["x1:1+ x2:0-"])
    assert len(gs) == 2
    # a symmetric generator is its own star up to sign
    assert len(GeneratorSet.parse(["x1:0-"])) == 1


def test_generator_set_rejects_non_multilinear():
    from pistar.free_star import Polynomial, V0P, Var

    with pytest.raises(MultilinearityError):
        GeneratorSet([Polynomial({(Var(1, V0P),): 1, (Var(1, V0P), Var(2, V0P)): 1})])


def test_file_text():
    gs = GeneratorSet.from_file_text("# W\n[x1:0+, x?]\nx1:0-  # skew even\n")
    assert [s for s, _ in gs.sources] == ["[x1:0+, x?]", "x1:0-"]
    assert gs.min_degree == 1


def test_consequences_examples():
    gs = GeneratorSet.parse(["x1:0-"])
    assert len(consequences(gs, (1, 1, 0, 0))) == 2
    assert len(consequences(GeneratorSet.parse(["[x1:0+, x2:0+]"]), (2, 0, 0, 0))) == 1
    W = catalog("W_eta2_gr")
    rec = signature_codim(W, (0, 0, 1, 1))
    assert len(consequences(GeneratorSet.parse(W_SET), (0, 0, 1, 1))) == rec.pn_dim - rec.codim == 1


def test_consequences_accepts_plain_iterables():
    assert len(consequences([parse("x1:0-")], (0, 1, 0, 0))) == 1


def test_consequences_are_identities():
    W = catalog("W_eta2_gr")
    gs = GeneratorSet.parse(W_SET)
    for n in (1, 2, 3):
        for sig in signatures(n):
            ids = identity_space(W, sig)
            for row in consequences(gs, sig):
                dense = [row.get(k, 0) for k in range(ids.cols)]
                assert subspace_contains(ids, dense)


@pytest.mark.parametrize("key, exprs", [("W_eta2_gr", W_SET), ("C3_i1_gr", C3_SET)])
def test_verified_sets(key, exprs):
    rep = verify_tideal(catalog(key), GeneratorSet.parse(exprs), 4)
    assert rep.ok
    assert rep.verdict == "verified at degrees <= 4 (bounded check)"
    assert [d.n for d in rep.degrees] == [1, 2, 3, 4]
    assert all(d.consequence_dim == d.identity_dim for d in rep.degrees)


def test_missing_generator_fails_at_degree_one():
    gs = GeneratorSet.parse(W_SET).without("x1:0-")
    rep = verify_tideal(catalog("W_eta2_gr"), gs, 4)
    assert not rep.ok
    assert rep.degrees[0].verdict == "failed"
    assert (0, 1, 0, 0) in rep.degrees[0].failing
    assert rep.verdict == "failed at degree 1"


def test_non_identity_generator_is_named():
    gs = GeneratorSet.parse(W_SET + ["x1:1+ x2:1-"])
    rep = verify_tideal(catalog("W_eta2_gr"), gs, 2)
    assert not rep.generators_ok
    bad = [g for g in rep.generators if not g.identity]
    assert bad and all(g.witness for g in bad)
    assert rep.verdict.startswith("failed: ")


def test_degree_cap():
    with pytest.raises(ValueError):
        verify_tideal(catalog("F"), GeneratorSet(), MAX_DEGREE + 1)


def test_report_json():
    rep = verify_tideal(resolve("G2_tau_gr"), GeneratorSet.parse(GENERATOR_SETS["L3.3.1"][0][1]), 3)
    data = rep.to_json()
    assert data["verdict"].startswith("verified")
    assert [d["n"] for d in data["degrees"]] == [1, 2, 3]
    assert {e["expression"] for e in data["expansions"]} == set(GENERATOR_SETS["L3.3.1"][0][1])
