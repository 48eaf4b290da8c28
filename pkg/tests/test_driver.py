import json
import subprocess
import sys

import pytest

from derham import driver
from derham.corpus import builtin
from derham.simplicial import parse_complex


def run(argv, tmp_path, name="report.json"):
    out = tmp_path / name
    code = driver.main(argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


def statuses(report):
    return {c["name"]: c["status"] for c in report["checks"]}


def test_betti_triangle_boundary_all_sides(tmp_path, capsys):
    code, rep = run(["betti", "--input", "triangle-boundary", "--q-max", "1"], tmp_path)
    assert code == 0
    assert rep["schema"] == "derham-report/1"
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["betti/omega"]["data"]["betti"] == [1, 1]
    assert by_name["betti/sullivan"]["data"]["betti"] == [1, 1]
    assert by_name["betti/simplicial"]["data"]["betti"] == [1, 1]
    assert by_name["betti/agreement"]["status"] == "pass"
    assert "betti: pass" in capsys.readouterr().out


@pytest.mark.parametrize("name", ["point", "triangle"])
def test_betti_contractible(name, tmp_path):
    code, rep = run(["betti", "--input", name, "--side", "omega"], tmp_path)
    assert code == 0
    assert rep["checks"][0]["data"]["betti"] == [1, 0, 0]


def test_not_stabilized_is_not_a_failure(tmp_path):
    code, rep = run(["betti", "--input", "tetrahedron-boundary", "--d-max", "6"], tmp_path)
    assert code == 0
    assert statuses(rep)["betti/omega"] == "not-stabilized"
    assert statuses(rep)["betti/agreement"] == "not-stabilized"
    assert rep["status"] == "not-stabilized"


def test_quasi_iso_wedge(tmp_path):
    code, rep = run(["verify-quasi-iso", "--input", "wedge", "--d-cech", "2"], tmp_path)
    assert code == 0 and rep["status"] == "pass"
    induced = next(c for c in rep["checks"] if c["name"] == "induced_P")
    assert [r["rank"] for r in induced["data"]["degrees"]] == [1, 2, 0]


def test_quasi_iso_triangle_boundary(tmp_path):
    code, rep = run(["verify-quasi-iso", "--input", "triangle-boundary", "--d-cech", "3"], tmp_path)
    assert code == 0 and set(statuses(rep).values()) == {"pass"}


@pytest.mark.parametrize("name", ["point", "triangle-boundary"])
def test_lemmas(name, tmp_path):
    code, rep = run(["verify-lemmas", "--input", name, "--tv-trials", "10", "--extres-trials", "5",
                     "--d-cech", "3", "--d-lemma", "3"], tmp_path)
    assert code == 0 and set(statuses(rep).values()) == {"pass"}


def test_gomez(tmp_path):
    code, rep = run(["gomez"], tmp_path)
    assert code == 0
    certs = rep["checks"][0]["data"]["certificates"]
    assert all(certs.values()) and len(certs) == 7


def test_failure_sets_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(driver, "partition_sum_is_one", lambda X: False)
    code, rep = run(["verify-lemmas", "--input", "point", "--tv-trials", "1", "--extres-trials", "1",
                     "--d-cech", "1", "--d-lemma", "1"], tmp_path)
    assert code == 1 and rep["status"] == "fail"
    assert statuses(rep)["partition_of_unity"] == "fail"


def test_file_input_and_round_trip(tmp_path):
    X = builtin("two-triangles")
    path = tmp_path / "cx.json"
    path.write_text(json.dumps(X.to_json()))
    code, rep = run(["betti", "--input", str(path), "--q-max", "1", "--d-max", "4"], tmp_path)
    assert code == 0
    assert parse_complex(rep["complexes"][0]).simplices == X.simplices
    assert rep["complexes"][0] == X.to_json()


def test_list_input(tmp_path):
    path = tmp_path / "many.json"
    path.write_text(json.dumps([builtin("point").to_json(), builtin("edge").to_json()]))
    code, rep = run(["betti", "--input", str(path), "--side", "simplicial"], tmp_path)
    assert code == 0 and [c["complex"] for c in rep["checks"]] == ["point", "edge"]


def test_parse_error_diagnostics(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "name": "x",\n  "vertices": ["1"\n}')
    assert driver.main(["betti", "--input", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line 4" in err and "bad.json" in err


def test_unknown_input(capsys):
    assert driver.main(["betti", "--input", "no-such-thing"]) == 2
    assert "built-in" in capsys.readouterr().err


def test_invalid_config(capsys):
    assert driver.main(["betti", "--q-max", "3", "--d-max", "2"]) == 2
    assert "d_max" in capsys.readouterr().err


def test_reports_are_byte_identical(tmp_path):
    argv = ["verify-quasi-iso", "--input", "edge", "--d-max", "5", "--d-cech", "2"]
    driver.main(argv + ["--out", str(tmp_path / "a.json")])
    driver.main(argv + ["--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_parallel_matches_sequential(tmp_path):
    argv = ["betti", "--d-max", "5"]
    driver.main(argv + ["--out", str(tmp_path / "seq.json")])
    driver.main(argv + ["--jobs", "2", "--out", str(tmp_path / "par.json")])
    assert (tmp_path / "seq.json").read_bytes() == (tmp_path / "par.json").read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "derham.driver", "gomez"], capture_output=True, text=True)
    assert proc.returncode == 0 and "gomez: pass" in proc.stdout
