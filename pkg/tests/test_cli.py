import io
import json
import subprocess
import sys

import pytest

from clonelab import __version__, cli


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def strip_elapsed(text):
    doc = json.loads(text)
    doc.pop("elapsed_ms")
    return json.dumps(doc)


def test_report_schema():
    code, doc, _ = run("verify", "fincard", "--trials", "20", "--seed", "3")
    assert code == 0
    assert set(doc) == {"command", "version", "params", "status", "checked",
                        "counterexample", "suites", "elapsed_ms"}
    assert doc["command"] == "verify fincard"
    assert doc["version"] == __version__
    assert doc["params"] == {"seed": 3, "trials": 20}
    assert doc["status"] == "pass" and doc["counterexample"] is None


@pytest.mark.parametrize("argv", [
    ("verify", "clone-axioms", "--q", "2", "--trials", "200", "--seed", "5"),
    ("verify", "roundtrip", "--trials", "30", "--seed", "9"),
    ("verify", "lemmas", "--n", "1", "--trials", "20", "--seed", "1"),
])
def test_same_seed_same_bytes(argv):
    _, _, a = run(*argv)
    _, _, b = run(*argv)
    assert strip_elapsed(a) == strip_elapsed(b)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CLONELAB_SEED", "17")
    _, doc, _ = run("verify", "fincard", "--trials", "5")
    assert doc["params"]["seed"] == 17
    _, doc, _ = run("verify", "fincard", "--trials", "5", "--seed", "4")
    assert doc["params"]["seed"] == 4


def test_clone_axioms_failure_exit_code():
    code, doc, _ = run("verify", "clone-axioms", "--q", "2", "--n", "2", "--m", "2",
                       "--trials", "1000", "--seed", "42")
    assert code == 1
    assert doc["status"] == "fail"
    assert doc["counterexample"]["axiom"] == 3
    assert doc["counterexample"]["suite"] == "clone-axioms[q=2]"


def test_hopf_demo():
    code, doc, text = run("hopf", "demo")
    assert code == 0
    assert '"2*t{1}x{1}"' in text
    assert doc["suites"][0]["details"]["witness"]["difference"] == "2*t{1}x{1}"


def test_classification_small():
    code, doc, _ = run("verify", "classification", "--coeff-bound", "1")
    assert code == 0
    details = doc["suites"][0]["details"]
    assert details["morphisms"] == details["canonical_family"]


def test_classification_square_q_fails():
    code, doc, _ = run("verify", "classification", "--q", "1", "--coeff-bound", "1")
    assert code == 1
    assert doc["counterexample"]["kind"] == "morphism-outside-family"


def test_set_clone():
    code, doc, _ = run("verify", "set-clone", "--size", "2", "--max-arity", "1")
    assert code == 0 and doc["checked"] > 0


def test_eval_tasks(tmp_path):
    tasks = {"q": 2, "tasks": [
        {"op": "bullet", "phi": {"projection": [1, 1]}, "psis": [{"projection": [1, 1]}]},
        {"op": "mul", "n": 2, "a": "t{1,2}x{}", "b": "t{2}x{1}"},
        {"op": "tau", "n": 1, "d": 1, "a": "t{1}x{}"},
        {"op": "canonical", "morphism": {"n": 2, "t": "-t{2}x{} + t{1}x{2}", "x": "t{1}x{2}"}},
        {"op": "canonical", "morphism": {"n": 1, "t": "1", "x": "0"}},
        {"op": "is_morphism", "morphism": {"n": 1, "t": "t{}x{1}", "x": "t{1}x{}"}},
        {"op": "substitute", "f": {"n": 2, "values": [2]},
         "gs": [{"n": 1, "values": [1]}, {"n": 1, "values": [1, 1]}]},
    ]}
    path = tmp_path / "tasks.json"
    path.write_text(json.dumps(tasks))
    code, doc, _ = run("eval", "--file", str(path))
    assert code == 0
    results = doc["suites"][0]["details"]["results"]
    assert results[0]["result"] == {"q": 2, "n": 1, "t": "t{1}x{}", "x": "t{}x{1}"}
    assert results[1]["result"] == "2*t{1}x{1}"
    assert results[2]["result"] == "-t{1}x{}"
    assert results[3]["result"] == {"sign": -1, "d": 2, "f": "t{1}x{}", "g": "t{1}x{}"}
    assert results[4]["result"] is None and "NotClassifiable" in results[4]["error"]
    assert results[5]["result"] is False
    assert results[6]["result"] == {"n": 2, "values": [2, 2]}


def test_eval_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([{"op": "mul", "n": 1, "a": "t{2}x{}", "b": "1"}]))
    code, doc, _ = run("eval", "--file", str(path))
    assert code == 2 and doc is None
    assert "error" in capsys.readouterr().err


def test_eval_missing_file(tmp_path):
    code, _, _ = run("eval", "--file", str(tmp_path / "nope.json"))
    assert code == 2


def test_usage_errors():
    assert run("verify")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("verify", "fincard", "--trials", "many")[0] == 2


def test_square_q_rejected_by_clone_axioms():
    assert run("verify", "clone-axioms", "--q", "4", "--trials", "1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clonelab", "hopf", "demo"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
