import json
import re

import pytest

from biorder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_sign_cmp_arch(capsys):
    assert run(capsys, "sign", "abAB") == (0, "+\n")
    assert run(capsys, "cmp", "b", "a") == (0, "<\n")
    assert run(capsys, "arch", "b", "a") == (0, "<<\n")
    assert run(capsys, "arch", "a", "A") == (0, "~~\n")
    assert run(capsys, "sign", "Ba", "--order", "magnus-swapped") == (0, "-\n")


def test_usage_errors(capsys):
    assert main(["nope"]) == 2
    assert main(["sign", "xyz"]) == 2
    assert main(["sign", "e"]) == 2
    assert main(["dynreal", "--plot", "x.svg"]) == 2


def test_truncation_exit_code(capsys):
    assert main(["sign", "abABaBAb", "--max-degree", "2"]) == 1


def test_saturate_and_contradiction(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["saturate", "--positives", "a,b", "--length", "2", "--conj", "2",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["outcome"] == "Consistent" and data["config"]["length"] == 2
    assert main(["saturate", "--positives", "a,b", "--negatives", "ab", "--length", "2"]) == 1


def test_census_csv(capsys):
    code, out = run(capsys, "census", "--positives", "a,b", "--length", "2", "--conj", "2",
                    "--mode", "left", "--format", "csv")
    assert code == 0
    assert len({line.split(",")[0] for line in out.splitlines()[1:]}) == 4


def test_witness_verify_roundtrip(tmp_path, capsys):
    cert = tmp_path / "c.json"
    assert main(["witness", "--positives", "a,b", "--length", "4", "--out", str(cert)]) == 0
    first = cert.read_bytes()
    assert main(["verify", str(cert)]) == 0
    assert main(["witness", "--positives", "a,b", "--length", "4", "--out", str(cert)]) == 0
    assert cert.read_bytes() == first
    data = json.loads(first)
    data["signs"] = data["signs"][::-1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", str(bad)]) == 1


def test_sweep_cli(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["sweep", "--max-constraints", "1", "--max-word-length", "2",
                 "--length", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["total"] == 9


def test_dynreal_outputs(tmp_path, capsys):
    stage, svg = tmp_path / "stage.json", tmp_path / "r.svg"
    assert main(["dynreal", "--elements", "30", "--tau-length", "2", "--word", "a",
                 "--out", str(stage), "--plot", str(svg)]) == 0
    data = json.loads(stage.read_text())
    assert data["N"] == 30 and data["order_preserving"]
    assert data["tau"][0]["endpoints"] == ["1/3", "2/3"]
    assert svg.read_text().lstrip().startswith("<?xml")


def test_homeo_outputs(tmp_path, capsys):
    csv, svg = tmp_path / "f.csv", tmp_path / "f.svg"
    code, out = run(capsys, "homeo", "--points", "0,0;1/2,3/4;1,1", "--csv", str(csv),
                    "--plot", str(svg))
    assert code == 0 and json.loads(out)["in_P"] is True
    assert csv.read_text() == "x,y\n0,0\n1/2,3/4\n1,1\n"
    assert "<svg" in svg.read_text()


def test_wreath_demo(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["wreath-demo", "--instance", "f2-magnus", "--samples", "200",
                 "--seed", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["config"]["seed"] == 1 and data["axioms"]["passed"]


def test_class_census(capsys):
    code, out = run(capsys, "class-census", "--length", "8", "--format", "csv")
    assert code == 0
    assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["A", "B", "AB", "AAB", "ABB"]


@pytest.mark.parametrize("argv", [
    ["census", "--positives", "a", "--length", "2"],
    ["witness", "--length", "4"],
    ["dynreal", "--elements", "20"],
    ["wreath-demo", "--samples", "50"],
])
def test_json_outputs_have_no_floats(argv, capsys):
    code, out = run(capsys, *argv)
    assert code == 0
    assert "config" in json.loads(out)
    assert not re.search(r"\d\.\d", out)
