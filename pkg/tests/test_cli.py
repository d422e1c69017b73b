from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from conftest import GF5, triangular
from natquiver.algebra import algebra_to_json
from natquiver.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def paper_file(tmp_path, capsys):
    path = tmp_path / "lg.json"
    code, _, _ = run(["construct", "paper-example", "--char", 5, "-o", path], capsys)
    assert code == 0
    return path


def test_analyze_paper_example(paper_file, capsys):
    code, out, _ = run(["analyze", paper_file], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 22 and rep["radical_chain_dims"] == [12, 4, 0]
    assert [b["n"] for b in rep["blocks"]] == [1, 1, 2, 2]


def test_analyze_is_deterministic(paper_file, capsys):
    first = run(["analyze", paper_file, "--seed", 3], capsys)[1]
    second = run(["analyze", paper_file, "--seed", 3], capsys)[1]
    assert first == second


def test_quiver_export(paper_file, capsys):
    code, out, _ = run(["quiver", paper_file, "--format", "dot"], capsys)
    assert code == 0 and out.startswith("digraph Q {") and out.count("->") == 3
    code, out, _ = run(["quiver", paper_file, "--kind", "ordinary", "--format", "json"], capsys)
    doc = json.loads(out)
    assert sum(a["count"] for a in doc["arrows"]) == 3


def test_verify_all_passes(paper_file, capsys):
    code, out, _ = run(["verify", paper_file], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert set(doc["suites"]) == {"core", "prop12", "graded", "gabriel", "basics"}
    assert doc["suites"]["basics"]["checks"]["quiver_equality_verdict"].startswith("not applicable")


def test_verify_truncation_flag(tmp_path, capsys):
    path = tmp_path / "t3.json"
    path.write_text(json.dumps(algebra_to_json(triangular(3, GF5))))
    code, out, _ = run(["verify", path, "--suite", "gabriel", "--truncate", 1], capsys)
    assert code == 1 and json.loads(out)["counterexample"]["suite"] == "gabriel"
    code, _, _ = run(["verify", path, "--suite", "gabriel", "--truncate", 4], capsys)
    assert code == 0


def test_roundtrip_through_files(tmp_path, paper_file, capsys):
    doc = json.loads(paper_file.read_text())
    again = tmp_path / "again.json"
    again.write_text(json.dumps(doc))
    assert run(["analyze", paper_file], capsys)[1] == run(["analyze", again], capsys)[1]


def test_ordinary_equals_natural_on_basic_input(tmp_path, capsys):
    path = tmp_path / "t3.json"
    path.write_text(json.dumps(algebra_to_json(triangular(3, GF5))))
    nat = run(["quiver", path, "--format", "json"], capsys)[1]
    ordi = run(["quiver", path, "--kind", "ordinary", "--format", "json"], capsys)[1]
    assert nat == ordi


def test_exit_codes_for_bad_input(tmp_path, paper_file, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["analyze", bad], capsys)[0] == 2
    assert run(["analyze", tmp_path / "missing.json"], capsys)[0] == 2
    assert run(["construct", "paper-example", "--char", 2], capsys)[0] == 2
    assert run(["construct", "matrix", "--char", 4], capsys)[0] == 2
    assert run(["construct", "path-algebra"], capsys)[0] == 2


def test_hand_broken_structure_constants(tmp_path, paper_file, capsys):
    doc = json.loads(paper_file.read_text())
    i, j, vec = doc["mult"][0]
    vec = list(vec)
    vec[0] = (int(vec[0]) + 1) % 5
    doc["mult"][0] = [i, j, vec]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    code, _, err = run(["analyze", broken], capsys)
    assert code == 2 and "fails" in err


def test_bad_degrees_rejected(tmp_path, capsys):
    doc = algebra_to_json(triangular(2, GF5))
    doc["degrees"] = [0, 0, 0]
    path = tmp_path / "deg.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["verify", path], capsys)
    assert code == 2 and "radical grading" in err


def test_construct_kinds(tmp_path, capsys):
    spec = tmp_path / "q.json"
    spec.write_text(json.dumps({"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}))
    code, out, _ = run(["construct", "path-algebra", "--spec", spec, "--rationals"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 3
    code, out, _ = run(["construct", "matrix", "--n", 3, "--char", 7], capsys)
    assert json.loads(out)["dim"] == 9
    rg = tmp_path / "rg.json"
    rg.write_text(json.dumps({"sizes": [1, 2], "corner_counts": [[0, 1], [1, 0]], "L": 2}))
    out_path = tmp_path / "g.json"
    assert run(["construct", "random-graded", "--spec", rg, "--char", 7, "-o", out_path], capsys)[0] == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["degrees"]) == doc["dim"]
    code, out, _ = run(["verify", out_path], capsys)
    assert code == 0 and "supplied_grading_isomorphic_to_gr" in json.loads(out)["suites"]["graded"]["checks"]


def test_construct_skew_group(tmp_path, capsys):
    spec = tmp_path / "sk.json"
    spec.write_text(
        json.dumps(
            {
                "quiver": {"vertices": ["1", "2"], "arrows": []},
                "action": {"order": 2, "generator": {"e1": "e2", "e2": "e1"}},
            }
        )
    )
    code, out, _ = run(["construct", "skew-group", "--spec", spec, "--char", 3], capsys)
    assert code == 0 and json.loads(out)["dim"] == 4


@pytest.mark.skipif(shutil.which("natquiver") is None, reason="console script not installed")
def test_console_script(paper_file):
    proc = subprocess.run(["natquiver", "quiver", str(paper_file)], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and proc.stdout.startswith("digraph")
