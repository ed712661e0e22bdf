from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from secantlab.cli import main
from secantlab.schemas import SCHEMAS


def run_json(tmp_path, args, name="out.json"):
    path = tmp_path / name
    code = main(args + ["--json", str(path)])
    data = json.loads(path.read_text()) if path.exists() else None
    return code, data


def validate(data):
    jsonschema.validate(data, SCHEMAS[data["command"]])


def test_construct_writes_an_ideal_file(tmp_path):
    out = tmp_path / "v22.ideal"
    code, data = run_json(tmp_path, ["construct", "--variety", "veronese:2,2", "--out", str(out)])
    assert code == 0
    validate(data)
    assert data["generators"] == 6 and data["degree"] == 4
    # the written file can be read back as a variety
    code2, data2 = run_json(tmp_path, ["invariants", "--variety", f"file:{out}"], "inv.json")
    assert code2 == 0
    validate(data2)
    assert (data2["dim"], data2["degree"]) == (2, 4)


def test_project_and_secant(tmp_path):
    code, data = run_json(tmp_path, ["project", "--variety", "veronese:2,2", "--field", "GF(32003)",
                                     "--center", "on-secant"])
    assert code == 0
    validate(data)
    assert data["s"] == 1 and data["degree"] == 4
    code, data = run_json(tmp_path, ["secant", "--variety", "segre:1,2", "--method", "both"], "s.json")
    assert code == 0
    validate(data)
    assert data["agree"] and {r["s"] for r in data["reports"].values()} == {2}


def test_betti_from_ideal_file(tmp_path, capsys):
    f = tmp_path / "ci.ideal"
    main(["construct", "--variety", "ci:2,2", "--field", "32003", "--out", str(f)])
    capsys.readouterr()
    code, data = run_json(tmp_path, ["betti", "--ideal", str(f), "--field", "32003"])
    assert code == 0
    validate(data)
    assert data["euler_check"]
    assert data["betti"]["entries"] == {"0,0": 1, "1,1": 2, "2,2": 1}
    main(["betti", "--variety", "veronese:1,3"])
    assert "total:" in capsys.readouterr().out


@pytest.mark.parametrize("suite,args", [
    ("thm3.3", ["--variety", "segre:1,2", "--seed", "7"]),
    ("cor3.2", ["--variety", "veronese:2,2", "--center", "on-secant", "--field", "32003"]),
    ("thm5.1", ["--field", "32003"]),
    ("ex5.4", ["--field", "32003"]),
    ("ex3.7", ["--field", "32003"]),
])
def test_verify_suites(tmp_path, suite, args):
    code, data = run_json(tmp_path, ["verify", suite] + args)
    assert code == 0
    validate(data)
    assert data["verdict"] == "pass"


def test_stratify_json_is_deterministic(tmp_path):
    args = ["stratify", "--variety", "veronese:2,2", "--trials", "5", "--on-secant", "2", "--seed", "4"]
    main(args + ["--json", str(tmp_path / "a.json")])
    main(args + ["--json", str(tmp_path / "b.json")])
    a = (tmp_path / "a.json").read_bytes()
    assert a == (tmp_path / "b.json").read_bytes()
    data = json.loads(a)
    validate(data)
    assert data["verdict"] == "consistent"


@pytest.mark.parametrize("args,code", [
    (["construct", "--variety", "bogus:1"], 2),
    (["project", "--variety", "veronese:2,2", "--center", "1,0,0,0,0,0"], 2),
    (["project", "--variety", "veronese:2,2", "--center", "1,2"], 2),
    (["betti", "--variety", "veronese:2,2", "--field", "8"], 2),
    (["construct", "--variety", "veronese:3,3"], 2),
    (["secant", "--variety", "ci:2,2", "--method", "conductor"], 2),
    (["verify", "thm3.3", "--variety", "g14:0", "--field", "32003", "--pair-budget", "10"], 3),
])
def test_exit_codes(args, code, capsys):
    assert main(args) == code
    assert capsys.readouterr().err


def test_environment_budget_override(monkeypatch):
    monkeypatch.setenv("SECANTLAB_PAIR_BUDGET", "5")
    assert main(["invariants", "--variety", "g14:0", "--field", "32003"]) == 3


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "secantlab.cli", "construct", "--variety", "veronese:1,3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "-x1^2 + x0*x2" in res.stdout
