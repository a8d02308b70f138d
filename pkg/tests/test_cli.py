import json
import subprocess
import sys

import pytest

from heptagonal.cli import SCHEMA_VERSION, THREADS_ENV, RunConfig, main, parse_samples


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_samples():
    assert parse_samples("0.1, 0.5+0.2i,0.3j") == [0.1, complex(0.5, 0.2), 0.3j]


def test_config_rejects_nonpositive_tolerance():
    with pytest.raises(ValueError):
        RunConfig(tol=0)


@pytest.mark.parametrize("command", ["group-check", "homology-check", "k3"])
def test_exact_commands_pass(capsys, command):
    code, out = run(capsys, command, "--samples", "0.5")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("PASS")


def test_json_schema(capsys):
    code, out = run(capsys, "periods", "--samples", "0.5", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"] == "periods"
    assert doc["config"]["samples"] == ["0.5"]
    assert doc["passed"] is True
    keys = {"assertion_id", "paper_ref", "status", "residual", "tolerance", "detail"}
    assert all(set(a) == keys for a in doc["assertions"])


def test_verify_sample(capsys):
    code, out = run(capsys, "verify", "--samples", "0.37")
    assert code == 0, out


def test_theta_scan(capsys):
    code, out = run(capsys, "theta-scan", "--samples", "0.5", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"]


def test_inject_fault_fails(capsys):
    code, out = run(capsys, "group-check", "--inject-fault", "h1")
    assert code == 1
    assert "FAIL" in out


def test_sample_near_singular_point_fails(capsys):
    code, out = run(capsys, "tau", "--samples", "1e-9")
    assert code == 1
    assert "clearance" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["k3", "--samples", "0.5", "--format", "json", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["command"] == "k3"


def test_threads_do_not_change_output(tmp_path, monkeypatch, capsys):
    argv = ["tau", "--samples", "0.1,0.5", "--format", "json"]
    main(argv)
    serial = capsys.readouterr().out
    monkeypatch.setenv(THREADS_ENV, "2")
    main(argv)
    assert capsys.readouterr().out == serial


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "heptagonal.cli", "group-check"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "PASS" in res.stdout
