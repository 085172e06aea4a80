import csv
import io
import json
import subprocess
import sys

import pytest

from orlicz_jackson.cli import COLUMNS, ConfigError, RunConfig, main, run


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_verify_all_l2_example(capsys):
    code, out, _ = invoke(capsys, "verify-all", "--scenario", "l2", "--n", "1,2,4", "--seed", "7", "--samples", "20")
    assert code == 0
    assert out.splitlines()[0] == ",".join(COLUMNS)
    rows = rows_of(out)
    assert {r["n"] for r in rows} == {"1", "2", "4"}
    checks = {r["check"] for r in rows if r["n"] == "2"}
    assert {"jackson-violations", "bernstein-ball", "projection", "unit-section", "psi-roundtrip"} <= checks
    assert all(r["verdict"] == "pass" for r in rows)


def test_jackson_rows_per_sample(capsys):
    code, out, _ = invoke(capsys, "jackson", "--scenario", "sp-p2-taikov", "--n", "3", "--samples", "100")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 100
    assert all(r["verdict"] == "pass" and r["check"].startswith("jackson[") for r in rows)


def test_output_is_deterministic_across_threads(capsys, monkeypatch):
    args = ("widths", "--scenario", "monotone-sat", "--scenario", "l1", "--n", "1,3", "--samples", "15", "--seed", "11")
    _, first, _ = invoke(capsys, *args)
    monkeypatch.setenv("ORLICZ_JACKSON_THREADS", "3")
    _, second, _ = invoke(capsys, *args)
    assert first == second
    _, third, _ = invoke(capsys, *args[:-1], "12")
    assert third != first


def test_empty_n_list_is_a_validation_error(capsys):
    code, _, err = invoke(capsys, "jackson", "--scenario", "l2", "--n", "")
    assert code == 2 and "n: empty n-list" in err


def test_bad_fields_report_their_path(capsys):
    code, _, err = invoke(capsys, "jackson", "--scenario", "nope", "--n", "1")
    assert code == 2 and "scenario[0]" in err
    code, _, err = invoke(capsys, "jackson", "--scenario", "l2", "--n", "1,0")
    assert code == 2 and "n[1]" in err
    with pytest.raises(ConfigError) as exc:
        RunConfig("jackson", scenarios=["l2"], samples=0).validate()
    assert exc.value.path == "samples"


def test_json_output_and_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = invoke(capsys, "norm", "--scenario", "power-p3", "--samples", "5", "--out", "json",
                          "--output", str(path))
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["columns"] == COLUMNS and len(data["rows"]) == 5


def test_inline_spectrum_and_scenario_file(capsys, tmp_path):
    cfg = tmp_path / "sc.json"
    cfg.write_text(json.dumps({"name": "from-file", "family": {"kind": "l2"}, "phi": {"kind": "alpha", "alpha": 1},
                               "weight": {"kind": "lebesgue"}, "psi": {"r": 1}}))
    spec = '[{"k": 1, "re": 1.0, "im": 0.0}, {"k": 4, "re": 0.0, "im": 2.0}]'
    code, out, _ = invoke(capsys, "modulus", "--scenario", str(cfg), "--n", "1,2", "--spectrum", spec)
    rows = rows_of(out)
    assert code == 0 and len(rows) == 2 and rows[0]["scenario"] == "from-file"
    code, out, _ = invoke(capsys, "jackson", "--scenario", "l2", "--n", "2", "--spectrum", spec, "--tau", "1.5")
    assert code == 0 and len(rows_of(out)) == 1


def test_majorant_check_exit_codes(capsys):
    code, out, _ = invoke(capsys, "majorant-check", "--scenario", "sp-p2-taikov")
    assert code == 0 and {r["check"] for r in rows_of(out)} == {"majorant-condition", "majorant-slice"}
    code, out, _ = invoke(capsys, "majorant-check", "--scenario", "sp-p2-taikov", "--r", "1")
    assert code == 1
    assert [r["verdict"] for r in rows_of(out) if r["check"] == "majorant-condition"] == ["fail"]


def test_numerical_failure_becomes_a_row(capsys):
    # l2 has no majorant: the suite error is reported, not raised
    code, out, _ = invoke(capsys, "majorant-check", "--scenario", "l2")
    rows = rows_of(out)
    assert code == 1 and rows[0]["verdict"] == "fail"


def test_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"scenario": "l2", "n": [2], "samples": 3, "seed": 5}))
    code, out, _ = invoke(capsys, "--config", str(cfg), "jackson")
    assert code == 0 and len(rows_of(out)) == 3
    code, out, _ = invoke(capsys, "--config", str(cfg), "jackson", "--samples", "4")
    assert len(rows_of(out)) == 4
    cfg.write_text(json.dumps({"scenario": "l2", "bogus": 1}))
    code, _, err = invoke(capsys, "--config", str(cfg), "jackson")
    assert code == 2 and "bogus" in err


def test_run_returns_rows_and_code():
    rows, code = run(RunConfig("widths", scenarios=["l2"], n=[1], samples=5))
    assert code == 0 and all(r["verdict"] for r in rows)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orlicz_jackson", "norm", "--scenario", "l1", "--samples", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("scenario,n,N,check")
