from __future__ import annotations

import json

import pytest

from pistar.catalog import catalog
from pistar.cli import main
from pistar.star_algebra import dump_json, to_json_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "W_eta2_gr\tdim=4" in out
    code, out, _ = run(capsys, "catalog", "show", "C2_star", "--json")
    assert json.loads(out)["name"] == "C2_star"
    code, _, err = run(capsys, "catalog", "show", "nope")
    assert code == 2 and "unknown algebra" in err


def test_codim(capsys, tmp_path):
    png = tmp_path / "c.png"
    code, out, _ = run(capsys, "codim", "W_eta2_gr", "--n", "3", "--json", "--plot", str(png))
    assert code == 0
    assert json.loads(out)["c"] == [1, 3, 7, 13]
    assert png.stat().st_size > 0
    code, out, _ = run(capsys, "codim", "C2_star+C3_i2", "--n", "2", "--per-signature")
    assert code == 0 and "sig (0, 1, 0, 0)" in out


def test_proper_codim(capsys):
    code, out, _ = run(capsys, "proper-codim", "U3_star", "--n", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["gamma"] == [1, 1, 1, 0]


def test_cocharacter(capsys):
    code, out, _ = run(capsys, "cocharacter", "N3_gri", "--json")
    assert code == 0 and json.loads(out)["multiplicities"]["(1)_0+ x (1)_1-"] == 1
    code, out, _ = run(capsys, "cocharacter", "F")
    assert "no nonzero" in out


def test_algebra_validate(capsys, tmp_path):
    good = tmp_path / "good.json"
    dump_json(catalog("G2_tau"), str(good))
    assert run(capsys, "algebra", "validate", str(good))[0] == 0
    data = to_json_dict(catalog("C2_star"))
    data["involution"] = [[0, [[0, "1"]]], [1, [[1, "2"]]]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "algebra", "validate", str(bad), "--json")
    assert code == 1 and json.loads(out)["violations"]
    missing = tmp_path / "missing.json"
    assert run(capsys, "algebra", "validate", str(missing))[0] == 2


def test_verify_tideal(capsys, tmp_path):
    gens = tmp_path / "w.txt"
    gens.write_text("# W_eta2_gr\n[x1:0+, x?]\n[x1:1-, x2:1+]\nx1:0-\nx1:1- x2:1-\nx1:1+ x2:1+\n")
    code, out, _ = run(capsys, "verify-tideal", "W_eta2_gr", "--generators", str(gens), "--max-degree", "3")
    assert code == 0 and "verified at degrees <= 3 (bounded check)" in out
    gens.write_text("[x1:0+, x?]\n[x1:1-, x2:1+]\nx1:1- x2:1-\nx1:1+ x2:1+\n")
    code, out, _ = run(capsys, "verify-tideal", "W_eta2_gr", "--generators", str(gens), "--max-degree", "2", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "failed at degree 1"
    gens.write_text("[x1:0+\n")
    assert run(capsys, "verify-tideal", "W_eta2_gr", "--generators", str(gens))[0] == 2
    assert run(capsys, "verify-tideal", "W_eta2_gr", "--generators", str(gens), "--max-degree", "9")[0] == 2


def test_verify_paper(capsys, tmp_path):
    out_file = tmp_path / "r.md"
    figs = tmp_path / "figs"
    code, _, err = run(capsys, "verify-paper", "--only", "L3.5", "--markdown", "-o", str(out_file), "--figures", str(figs))
    assert code == 0
    assert out_file.read_text().startswith("# Verification report")
    assert sorted(p.name for p in figs.iterdir()) == ["codim_L3.5.4.png", "multiplicities.png"]
    code, out, _ = run(capsys, "verify-paper", "--only", "L3.2.3", "--csv")
    assert code == 0 and len(out.splitlines()) == 7
    assert run(capsys, "verify-paper", "--only", "ZZZ")[0] == 2


def test_verify_paper_output_is_stable(capsys):
    _, a, _ = run(capsys, "verify-paper", "--only", "L3.1", "--json")
    _, b, _ = run(capsys, "verify-paper", "--only", "L3.1", "--json")
    assert a == b


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["codim", "F", "--n", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])
