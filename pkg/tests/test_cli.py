import json
import math

import pytest

from hilbert_et.cli import main

C_TRIANGLE = 4 / math.pi * math.log(1 + math.sqrt(2))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "hilbert-et/1"
    assert doc["constants"]["c_triangle"] == pytest.approx(C_TRIANGLE, abs=1e-12)
    assert doc["constants"]["catalan"] == pytest.approx(0.915965594177219, abs=1e-10)


def test_generate_power_of_linear(capsys):
    code, out, _ = run(capsys, "generate", "--family", "power-of-linear", "--N", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["coefficients"] == [[-1.0, 0.0], [3.0, 0.0], [-3.0, 0.0]]
    assert doc["family"] == "power-of-linear"


def test_generate_is_seeded(capsys):
    a = run(capsys, "generate", "--family", "random-unit", "--N", "10", "--seed", "4")[1]
    b = run(capsys, "generate", "--family", "random-unit", "--N", "10", "--seed", "4")[1]
    c = run(capsys, "generate", "--family", "random-unit", "--N", "10", "--seed", "5")[1]
    assert a == b and a != c


def test_generated_file_round_trips(capsys, tmp_path):
    path = tmp_path / "p.json"
    assert main(["generate", "--family", "power-of-linear", "--N", "20", "--out", str(path)]) == 0
    code, out, _ = run(capsys, "discrepancy", "--input", str(path))
    assert code == 0
    assert json.loads(out)["discrepancy"]["value"] == pytest.approx(20.0, abs=1e-9)


def test_heights_family(capsys):
    code, out, _ = run(capsys, "heights", "--family", "power-of-linear", "--N", "5")
    assert code == 0
    assert json.loads(out)["heights"]["h"] / 5 == pytest.approx(0.3230659472194505, abs=1e-8)


def test_discrepancy_bounds(capsys):
    code, out, _ = run(capsys, "discrepancy", "--family", "random-unit", "--N", "30", "--report", "bounds")
    assert code == 0
    assert "bounds" in json.loads(out)


def test_hilbert_csv(capsys):
    code, out, _ = run(capsys, "hilbert", "--function", "triangle", "--grid", "64", "--out", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,value"
    assert len(lines) > 64
    x, v = map(float, lines[1].split(","))
    assert math.isfinite(x) and math.isfinite(v)


def test_hilbert_circle_json(capsys):
    code, out, _ = run(capsys, "hilbert", "--function", "triangle", "--domain", "circle",
                       "--delta", "0.5", "--grid", "128")
    assert code == 0
    doc = json.loads(out)
    assert doc["domain"] == "circle" and doc["delta"] == 0.5
    assert doc["sup_norm"] >= max(abs(v) for _, v in doc["samples"])


def test_extremal_report_and_sweep(capsys):
    code, out, _ = run(capsys, "extremal", "--function", "triangle", "--sweep", "delta", "--out", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["extremal"]["c_of_F"] == pytest.approx(C_TRIANGLE, abs=1e-8)
    assert doc["extremal"]["dichotomy"] == "line-dominant"
    assert doc["sweep"]["sup"] <= C_TRIANGLE + 1e-3


def test_byte_identical_runs(capsys):
    argv = ["hilbert", "--function", "outlier", "--domain", "circle", "--grid", "128", "--out", "csv"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    argv = ["discrepancy", "--family", "random-disk", "--N", "25", "--seed", "9"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_paper_subset(capsys):
    code, out, err = run(capsys, "verify-paper", "--only", "triangle", "tricomi")
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"] is True
    assert {c["name"].split(".")[0] for c in doc["checks"]} == {"triangle", "tricomi"}
    assert "PASS" in err


def test_exit_codes(capsys):
    assert run(capsys, "constants", "--out", "csv")[0] == 2
    assert run(capsys, "heights")[0] == 2
    assert run(capsys, "hilbert", "--function", "square")[0] == 2
    assert run(capsys, "extremal", "--function", "magicG")[0] == 2
    assert run(capsys, "verify-paper", "--only", "nonsense")[0] == 2
    with pytest.raises(SystemExit):
        main(["no-such-command"])
