from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from stokesbraid.cli import build_parser, config_from_args, main, run
from stokesbraid.errors import ConfigurationError
from stokesbraid.report import RunConfig, load_schema

SCHEMA = load_schema()


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def as_json(capsys, *argv):
    code, out = invoke(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_kloosterman(capsys):
    code, data = as_json(capsys, "kloosterman", "--group", "SL", "--n", "2", "--class", "x^2-3x+1")
    assert code == 0
    assert data["results"]["moduli"]["rigid"] is True
    assert all(r["claim"] for r in data["records"])


def test_kloosterman_pgl(capsys):
    code, data = as_json(capsys, "kloosterman", "--group", "PGL", "--n", "2", "--q", "13", "--class", "x^2-9x+1")
    assert code == 0
    assert data["results"]["moduli"]["point_count_over_closure_surrogate"] == 2


def test_full_twist(capsys):
    code, data = as_json(capsys, "full-twist", "--type", "A", "--rank", "2")
    assert code == 0
    assert len(data["records"]) == 2


def test_stokes_braid(capsys):
    code, data = as_json(capsys, "stokes-braid", "--type", "A", "--rank", "1", "--slope", "3/2")
    assert code == 0
    assert data["results"]["diagram"]["braid"] == [1, 1, 1]


def test_stokes_braid_custom_labels(capsys):
    code, data = as_json(
        capsys, "stokes-braid", "--rank", "2", "--slope", "1/3", "--labels", "2@0,2@2/3,2@4/3"
    )
    assert code == 0


def test_table(capsys):
    code, data = as_json(capsys, "table")
    assert code == 0
    rows = {r["type"]: r for r in data["results"]["table"]}
    assert rows["D4"]["center"] == "Z/2 x Z/2" and rows["D4"]["h"] == 6 and rows["D4"]["divides"]
    assert rows["B3"]["center"] == "Z/2" and rows["B3"]["h"] == 6
    assert rows["E8"]["center"] == "1" and rows["E8"]["h"] == 30
    assert len(data["records"]) == 10


def test_count(capsys):
    code, data = as_json(capsys, "count", "--n", "2", "--q", "7", "--braid", "1,1", "--target", "1")
    assert code == 0 and data["results"]["count"]["raw_count"] == 6
    code, data = as_json(capsys, "count", "--n", "2", "--q", "7", "--braid", "1", "--class", "x^2-3x+1")
    assert data["results"]["count"]["constrained_count"] == 1


def test_airy(capsys):
    code, data = as_json(capsys, "airy", "--type", "A", "--rank", "1")
    assert code == 0
    assert data["results"]["moduli"]["stabilizer_order"] == 2


def test_config_errors(capsys):
    code, _ = invoke(capsys, "kloosterman", "--n", "2")
    assert code == 2
    code, data = as_json(capsys, "kloosterman", "--n", "2", "--class", "x^2-3x+2")
    assert code == 2 and data["error"]["kind"] == "ConfigurationError"
    code, data = as_json(capsys, "stokes-braid", "--rank", "1", "--slope", "3/2", "--base", "1/3")
    assert code == 2
    code, data = as_json(capsys, "full-twist", "--type", "D", "--rank", "3")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_resource_error(capsys, monkeypatch):
    monkeypatch.setenv("STOKESBRAID_BUDGET", "10")
    code, data = as_json(capsys, "count", "--n", "2", "--q", "7", "--braid", "1,1", "--target", "1")
    assert code == 3 and data["error"]["kind"] == "ResourceError"


def test_failed_check_exit_code(capsys):
    # unsupported exact angle is a configuration error, not a silent approximation
    code, data = as_json(capsys, "stokes-braid", "--rank", "1", "--slope", "1", "--labels", "1,2@1/3")
    assert code == 2
    report = run(RunConfig("table"))
    report.add("deliberately failing record", False)
    assert report.exit_code == 1


def test_determinism():
    cfg = RunConfig("airy", type_label="A", rank=2, seed=5)
    a, b = run(cfg), run(cfg)
    assert json.dumps(a.body(), sort_keys=True, default=str) == json.dumps(b.body(), sort_keys=True, default=str)


def test_markdown(capsys):
    code, out = invoke(capsys, "full-twist", "--type", "G", "--rank", "2", "--format", "markdown")
    assert code == 0 and "| claim | result |" in out


def test_parser_validation():
    ns = build_parser().parse_args(["count", "--n", "3", "--q", "5", "--braid", "1,2"])
    cfg = config_from_args(ns)
    assert cfg.braid == (1, 2) and cfg.target is None
    ns = build_parser().parse_args(["count", "--n", "3", "--q", "5", "--braid", "1", "--class", "x^3-1", "--method", "flags"])
    with pytest.raises(ConfigurationError):
        config_from_args(ns)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stokesbraid", "full-twist", "--type", "A", "--rank", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["failed"] == 0
