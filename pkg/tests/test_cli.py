import csv
import io
import json
import subprocess
import sys

import pytest

from hkdlab.cli import RunConfig, UsageError, cmd_check, main, render


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "hkdlab", *args], capture_output=True,
                          text=True, env=env)


def test_check_json_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["check", "--example", "dicho-2d-constantP", "--tmax", "4",
                 "--grid-points", "21", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert list(doc) == ["config", "structural", "envelopes", "norms", "theorems",
                         "violations", "meta"]
    assert doc["meta"]["schema_version"] == "1.0"
    assert doc["config"]["example"] == "dicho-2d-constantP"
    assert doc["envelopes"]["dichotomy"]["uniformity"] == "nonuniform"
    assert doc["structural"]["kernel_inverse"]["v3"]["passed"]


def test_check_literal_exits_one(tmp_path):
    out = tmp_path / "r.json"
    assert main(["check", "--example", "dicho-2d-literal", "--out", str(out)]) == 1
    doc = json.loads(out.read_text())
    v = doc["violations"][0]
    assert v["check"] == "invariance"
    assert v["defect_at_1_0"] == pytest.approx(1.7783, abs=1e-3)
    assert doc["structural"]["projector_norm_max"] == pytest.approx(22026.465794806718)


def test_check_csv_columns(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["check", "--example", "scalar-ulnu", "--format", "csv", "--tmax", "2",
                 "--grid-points", "11", "--out", str(out)]) == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ["t", "N1_req", "N2_req", "hull"]
    assert len(rows) == 12 and rows[1][0] == "0.0"


def test_norms_csv(tmp_path):
    out = tmp_path / "n.csv"
    code = main(["norms", "--example", "growth-not-dicho", "--h", "logpoly", "--k", "logpoly",
                 "--kind", "growth", "--probe", "1,0", "--probe", "0,1", "--tmax", "2",
                 "--grid-points", "11", "--format", "csv", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ["t", "probe", "value", "lower", "upper"]
    assert rows[1][:3] == ["0.0", "0", "1.0"]
    assert len(rows) == 1 + 2 * 11


def test_norms_refuses_non_dichotomy(tmp_path):
    out = tmp_path / "n.json"
    code = main(["norms", "--example", "growth-not-dicho", "--h", "logpoly", "--k", "logpoly",
                 "--kind", "dichotomy", "--out", str(out)])
    assert code == 1
    assert json.loads(out.read_text())["norms"]["status"] == "precondition-failed"


@pytest.mark.parametrize("argv", [
    ["check", "--example", "nope"],
    ["check", "--example", "dicho-2d-constantP", "--grid-points", "1"],
    ["check", "--example", "dicho-2d-constantP", "--h", "cosh:2"],
    ["check", "--example", "dicho-2d-constantP", "--tmax", "-1"],
    ["norms", "--example", "dicho-2d-constantP", "--probe", "1,0,0"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    proc = run("check")
    assert proc.returncode == 2
    proc = run("reproduce", "everything")
    assert proc.returncode == 2


def test_module_entry_point_and_threads(tmp_path):
    env = {"HKDLAB_THREADS": "2", "PATH": ""}
    a = run("check", "--example", "scalar-ulnu", "--tmax", "2", "--grid-points", "11",
            "--theorems", env=env)
    b = run("check", "--example", "scalar-ulnu", "--tmax", "2", "--grid-points", "11",
            "--theorems")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["theorems"]["theorem1"]["verdict"] == "pass"


def test_render_drops_non_finite():
    doc, _ = cmd_check(RunConfig("scalar-ulnu", tmax=1.0, grid_points=3))
    doc["theorems"]["x"] = float("inf")
    assert '"x": null' in render(doc, "json")


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("scalar-ulnu", format="xml").validate()
