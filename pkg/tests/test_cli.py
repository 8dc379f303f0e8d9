import csv
import json
import math
import shutil
import subprocess
import sys

import numpy as np
import pytest

from graph_spectra.catalog import FIXTURES, star_spec
from graph_spectra.cli import chebyshev_points, main
from graph_spectra.graph import load_spec, spec_to_dict

STAR5 = json.dumps(spec_to_dict(star_spec(5)))
HALF_LINE = json.dumps({"n": 1, "edges": [], "tails": [{"attach": 1}]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_star_both_methods(capsys, tmp_path):
    path = tmp_path / "star.json"
    path.write_text(STAR5)
    code, out, _ = run(capsys, "spectrum", "--input", str(path), "--method", "both")
    assert code == 0
    doc = json.loads(out)
    disc = sorted(e["value"] for e in doc["eigenvalues"] if e["class"] == "discrete")
    assert disc == pytest.approx([-2.5, 2.5], abs=1e-12)
    hidden = [e for e in doc["eigenvalues"] if e["class"] == "hidden"]
    assert len(hidden) == 1 and hidden[0]["mult"] == 4 and abs(hidden[0]["value"]) < 1e-12
    assert doc["discrepancy"] < 1e-9
    assert doc["method"] == "both"
    assert set(doc) >= {"bands", "eigenvalues", "method", "residuals", "notes"}


def test_out_file_keeps_stdout_empty(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "spectrum", "--input", STAR5, "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["method"] == "canonical"


def test_hexagon_ladder_family(capsys):
    code, out, _ = run(capsys, "spectrum", "--input", json.dumps({"family": {"id": "hexagon-ladder"}}))
    assert code == 0
    doc = json.loads(out)
    r = (1 + math.sqrt(17)) / 2
    lo = min(b[0] for b in doc["bands"])
    hi = max(b[1] for b in doc["bands"])
    assert lo == pytest.approx(-r, abs=1e-12) and hi == pytest.approx(r, abs=1e-12)
    assert [e for e in doc["eigenvalues"] if e["class"] == "discrete"] == []


def test_oracle_residuals(capsys):
    code, out, _ = run(capsys, "spectrum", "--input", STAR5, "--oracle-n", "1500")
    assert code == 0
    res = json.loads(out)["residuals"]
    assert res["oracle_n"] == 1500
    assert max(res["finite_section"].values()) < 1e-6


def test_oracle_cap(capsys):
    code, _, err = run(capsys, "spectrum", "--input", STAR5, "--oracle-n", "20000")
    assert code == 1 and "oracle-n" in err


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "spectrum", "--input", str(tmp_path / "nope.json"))
    assert code == 1 and out == "" and "not found" in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "spectrum", "--input", str(path))
    assert code == 1 and "malformed JSON" in err


def test_invalid_graph(capsys):
    code, _, err = run(capsys, "spectrum", "--input", json.dumps({"n": 2, "edges": [[1, 5]], "tails": []}))
    assert code == 1 and "error" in err


def test_schur_rejects_multi_tail(capsys):
    spec = {"n": 2, "edges": [[1, 2]], "tails": [{"attach": 1}, {"attach": 2}]}
    code, _, err = run(capsys, "spectrum", "--input", json.dumps(spec), "--method", "schur")
    assert code == 1 and "one tail" in err


def test_canonical_rejects_unsupported_multi_tail(capsys):
    spec = {"n": 3, "edges": [[1, 2], [2, 3]], "tails": [{"attach": 1}, {"attach": 2}]}
    code, _, _ = run(capsys, "spectrum", "--input", json.dumps(spec))
    assert code == 1


def test_disagreement_exits_two(capsys, monkeypatch):
    import graph_spectra.cli as cli
    monkeypatch.setattr(cli, "discrepancy", lambda a, b: 1e-3)
    code, _, err = run(capsys, "spectrum", "--input", STAR5, "--method", "both")
    assert code == 2 and "disagree" in err


def read_measure(text):
    lines = text.splitlines()
    header = lines[0]
    split = lines.index("# masses")
    density = list(csv.reader(lines[1:split]))
    masses = list(csv.reader(lines[split + 1:]))
    return header, density, masses


def test_measure_free_semicircle(capsys):
    code, out, _ = run(capsys, "measure", "--input", HALF_LINE, "--samples", "64")
    assert code == 0
    header, density, masses = read_measure(out)
    assert "check=PASS" in header
    total = float(header.split("total_mass=")[1].split()[0])
    assert total == pytest.approx(1.0, abs=1e-8)
    assert density[0] == ["x", "w"] and len(density) == 65
    xs = np.array([float(r[0]) for r in density[1:]])
    ws = np.array([float(r[1]) for r in density[1:]])
    assert np.allclose(ws, np.sqrt(4 - xs ** 2) / (2 * np.pi), atol=1e-12)
    assert masses == [["lambda", "mass"]]


def test_measure_star_masses(capsys, tmp_path):
    target = tmp_path / "m.csv"
    code, out, _ = run(capsys, "measure", "--input", STAR5, "--samples", "16", "--out", str(target))
    assert code == 0 and out == ""
    _, _, masses = read_measure(target.read_text())
    lams = sorted(float(r[0]) for r in masses[1:])
    assert lams == pytest.approx([-2.5, 2.5], abs=1e-12)


def test_measure_zero_samples(capsys):
    code, out, _ = run(capsys, "measure", "--input", STAR5, "--samples", "0")
    assert code == 0
    header, density, masses = read_measure(out)
    assert density == [] and len(masses) == 3


def test_measure_negative_samples(capsys):
    code, _, _ = run(capsys, "measure", "--input", STAR5, "--samples", "-1")
    assert code == 1


def test_chebyshev_points():
    x = chebyshev_points(7)
    assert np.all(np.diff(x) > 0) and np.all(np.abs(x) < 2)
    assert x[3] == pytest.approx(0.0, abs=1e-15)


def test_examples_all(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == len(FIXTURES) >= 15
    assert all(l.startswith("PASS") for l in lines)


def test_examples_filter(capsys):
    code, out, _ = run(capsys, "examples", "--filter", "ladder")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert code == 0 and lines
    names = [l.split()[1] for l in lines]
    assert all("ladder" in n for n in names)


def test_examples_unknown_filter(capsys):
    code, _, _ = run(capsys, "examples", "--filter", "zzz-none")
    assert code == 1


def test_examples_injected_failure(capsys):
    code, out, _ = run(capsys, "examples", "--filter", "star", "--inject-failure")
    assert code != 0 and "FAIL" in out


def test_tolerance_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GRAPH_SPECTRA_TOL", "1e-4")
    code, out, _ = run(capsys, "spectrum", "--input", STAR5)
    assert code == 0 and json.loads(out)["residuals"]["tolerance"] == 1e-4
    monkeypatch.setenv("GRAPH_SPECTRA_TOL", "abc")
    code, _, err = run(capsys, "spectrum", "--input", STAR5)
    assert code == 1 and "GRAPH_SPECTRA_TOL" in err


def test_spec_json_round_trip():
    for spec in (star_spec(5), load_spec({"family": {"id": "simon-ladder", "params": {"period": 3}}}),
                 load_spec({"n": 2, "edges": [[1, 2, "3/2"]], "tails": [{"attach": 2, "bridge": "1/2"}]})):
        again = load_spec(json.loads(json.dumps(spec_to_dict(spec))))
        assert again == spec and again.params == spec.params


def test_output_json_round_trip(capsys):
    _, out, _ = run(capsys, "spectrum", "--input", STAR5)
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc
    for e in doc["eigenvalues"]:
        assert set(e) <= {"value", "mult", "class", "note"}


@pytest.mark.skipif(shutil.which("graph-spectra") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["graph-spectra", "spectrum", "--input", STAR5], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["bands"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graph_spectra", "examples", "--filter", "comb"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS comb" in proc.stdout
