import importlib.util
import json
from pathlib import Path

import pytest

from app.cli import main
from app.services import geom_crystal as gc

ROOT = Path(__file__).resolve().parent.parent


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cartan_json(capsys):
    code, out = run(capsys, "cartan", "--type", "C1", "--rank", "2")
    assert code == 0
    data = json.loads(out.out)
    assert data["type"] == "C1"
    assert data["index_set"] == [0, 1, 2]


def test_trop(capsys):
    code, out = run(capsys, "trop", "(c*x + y)/(x + y)")
    assert code == 0
    assert out.out.strip() == "max(c + x, y) - max(x, y)"


def test_unknown_type_exits_2(capsys):
    code, out = run(capsys, "cartan", "--type", "Z9", "--rank", "2")
    assert code == 2
    assert "unknown type" in out.err


def test_bad_expression_exits_2(capsys):
    code, out = run(capsys, "trop", "x - y")
    assert code == 2
    assert out.err.startswith("error:")


def test_verify_writes_report(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "verify", "chart", "--type", "A1", "--rank", "2", "--mode", "sampled",
                    "--trials", "5", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["pass"] is True
    assert data["sample_size"] == 5
    assert "Wrote" in out.out


def test_failing_verify_exits_1(capsys, monkeypatch, tmp_path):
    original = gc._e0_closed
    monkeypatch.setattr(gc, "_e0_closed", lambda p, c: {k: 2 * v for k, v in original(p, c).items()})
    target = tmp_path / "report.json"
    code, _ = run(capsys, "verify", "geom_axioms", "--type", "C1", "--rank", "2", "--mode", "sampled",
                  "--trials", "5", "--out", str(target))
    assert code == 1
    data = json.loads(target.read_text())
    assert data["pass"] is False
    assert data["failures"][0]["element"]


def test_geom_eval_every_index(capsys):
    code, out = run(capsys, "geom", "eval", "--type", "A1", "--rank", "2", "--point", "2,3", "--c", "5")
    assert code == 0
    data = json.loads(out.out)
    assert set(data["e"]) == {"0", "1", "2"}
    assert data["e"]["1"] == {"x1": "10", "x2": "3"}
    assert set(data["epsilon"]) == {"0", "1", "2"}
    assert set(data["gamma"]) == {"0", "1", "2"}


def test_geom_eval_one_index(capsys):
    code, out = run(capsys, "geom", "eval", "--type", "A1", "--rank", "2", "--point", "x1=2,x2=3",
                    "--c", "5", "--index", "1")
    assert code == 0
    data = json.loads(out.out)
    assert list(data["e"]) == ["1"]


def test_geom_eval_a2dag_reports_chart2(capsys):
    code, out = run(capsys, "geom", "eval", "--type", "A2dag", "--rank", "2", "--point", "1,2,3,4")
    assert code == 0
    data = json.loads(out.out)
    assert "chart2" in data
    assert set(data["chart2"]["epsilon"]) == {"0", "1"}


def test_geom_sigma(capsys):
    code, out = run(capsys, "geom", "sigma", "--type", "A1", "--rank", "2", "--point", "2,3")
    assert code == 0
    data = json.loads(out.out)
    assert data["a"] == "1/3"
    assert data["y"] == {"x1": "1/3", "x2": "2/3"}


def test_graph_dot(capsys):
    code, out = run(capsys, "graph", "--type", "A1", "--rank", "2", "--radius", "1", "--format", "dot")
    assert code == 0
    assert out.out.startswith('digraph "A1_2" {')
    assert out.out.count("->") == 3


def test_campaign_command(capsys):
    code, out = run(capsys, "campaign", "--type", "A1", "--check", "chart", "--mode", "sampled", "--ranks", "min")
    assert code == 0
    assert "1/1 reports passed" in out.out


def load_script(name):
    spec = importlib.util.spec_from_file_location(name, ROOT / "scripts" / f"{name}.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_campaign_script_writes_index(monkeypatch, tmp_path, capsys):
    script = load_script("run_campaign")
    monkeypatch.setattr(script, "REPORT_DIR", str(tmp_path))
    script.main(["--type", "A1", "--check", "chart", "--mode", "sampled", "--ranks", "min"])
    index = json.loads((tmp_path / "index.json").read_text())
    assert index == [{"file": "chart_A1_2.json", "pass": True, "mode": "sampled", "samples": index[0]["samples"]}]
    report = json.loads((tmp_path / "chart_A1_2.json").read_text())
    assert report["check"] == "chart"
    assert "1/1 reports passed" in capsys.readouterr().out


def test_campaign_script_exits_1_on_failure(monkeypatch, tmp_path):
    script = load_script("run_campaign")
    monkeypatch.setattr(script, "REPORT_DIR", str(tmp_path))
    original = gc._e0_closed
    monkeypatch.setattr(gc, "_e0_closed", lambda p, c: {k: 2 * v for k, v in original(p, c).items()})
    with pytest.raises(SystemExit) as info:
        script.main(["--type", "C1", "--check", "geom_axioms", "--mode", "sampled", "--ranks", "min"])
    assert info.value.code == 1
    assert json.loads((tmp_path / "index.json").read_text())[0]["pass"] is False
