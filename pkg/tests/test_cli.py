import json

import pytest

from toricell.cli import main

from conftest import input_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_quiver_output(capsys):
    code, doc = run(capsys, "quiver", input_path("threefold_four_sheaves.json"))
    assert code == 0
    assert doc["kind"] == "dimer_quiver"
    assert len(doc["arrows"]) == 10
    assert doc["labels"][8] == "x1x2"


def test_quiver_dot_file(capsys, tmp_path):
    dot = tmp_path / "q.dot"
    code, _ = run(capsys, "quiver", input_path("threefold_four_sheaves.json"),
                  "--dot", str(dot))
    assert code == 0
    assert dot.read_text().count("->") == 10


def test_superpotential_output(capsys):
    code, doc = run(capsys, "superpotential", input_path("threefold_four_sheaves.json"))
    assert code == 0
    assert doc["n_terms"] == 6
    assert doc["n_relations"] == 10


def test_consistency_exit_codes(capsys):
    code, doc = run(capsys, "consistency", input_path("threefold_four_sheaves.json"))
    assert code == 0 and doc["consistent"]
    code, doc = run(capsys, "consistency", input_path("threefold_three_sheaves.json"))
    assert code == 1 and not doc["consistent"]
    assert "a5" in doc["quick_reject_arrows"]


def test_matchings_output(capsys):
    code, doc = run(capsys, "matchings", input_path("threefold_four_sheaves.json"))
    assert code == 0
    assert doc["rank"] == 6
    assert len(doc["matchings"]) == 8
    supports = {m["extremal_ray"]: m["support"] for m in doc["matchings"]
                if m["extremal_ray"] is not None}
    assert supports[1] == ["a1", "a6", "a9"]
    assert doc["weight_zero_matches"]


def test_complex_output(capsys):
    code, doc = run(capsys, "complex", input_path("threefold_four_sheaves.json"))
    assert code == 0
    assert doc["counts"] == [4, 10, 10, 4]
    assert doc["incidence_feasible"]


def test_complex_mckay(capsys):
    code, doc = run(capsys, "complex", input_path("mckay_z6_123.json"))
    assert code == 0
    assert doc["counts"] == [6, 18, 18, 6]


def test_resolution_with_exactness(capsys):
    code, doc = run(capsys, "resolution", input_path("mckay_z2_11.json"),
                    "--verify-exactness", "--bound", "2")
    assert code == 0
    assert doc["minimal"] and doc["exact"]
    assert doc["pieces_checked"] == 4 * 9


def test_reconstruct_valid(capsys, tmp_path):
    svg = tmp_path / "t.svg"
    code, doc = run(capsys, "reconstruct", input_path("threefold_four_sheaves.json"),
                    "--svg", str(svg))
    assert code == 0
    assert doc["valid"]
    assert doc["total_area"] == [1, 1]
    assert doc["vertices"][1] == [[5, 9], [1, 9]]
    assert svg.read_text().startswith("<svg")


def test_reconstruct_crossing_exit_code(capsys):
    code, doc = run(capsys, "reconstruct", input_path("threefold_five_sheaves.json"))
    assert code == 1
    assert not doc["valid"]
    assert doc["crossings"]


def test_signcheck(capsys):
    code, doc = run(capsys, "signcheck", input_path("threefold_four_sheaves.json"),
                    "--arrow", "1")
    assert code == 0
    assert doc["admits_signs"]


def test_invalid_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "nonsense"}))
    assert main(["quiver", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    assert main(["quiver", str(missing)]) == 2


def test_quiver_roundtrip(capsys, tmp_path):
    """The quiver output is itself a valid input reproducing the same
    superpotential and relations."""
    code, doc = run(capsys, "quiver", input_path("threefold_four_sheaves.json"))
    assert code == 0
    doc.pop("labels")
    echo = tmp_path / "echo.json"
    echo.write_text(json.dumps(doc))
    _, a = run(capsys, "superpotential", input_path("threefold_four_sheaves.json"))
    _, b = run(capsys, "superpotential", str(echo))
    assert a == b


def test_deterministic_output(capsys):
    _, a = run(capsys, "superpotential", input_path("threefold_four_sheaves.json"))
    _, b = run(capsys, "superpotential", input_path("threefold_four_sheaves.json"))
    assert a == b
