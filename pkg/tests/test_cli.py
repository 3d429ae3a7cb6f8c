"""CLI behavior: schemas, exit codes, worker parity, validate wiring."""

import csv
import io
import json
import math

import pytest

from uavcov.analytic import downlink_coverage
from uavcov.cli import (
    CSV_COLUMNS,
    EXIT_CONFIG,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
    run_sweep,
    write_csv,
)
from uavcov.config import parse_config
from uavcov.model import ConstantElevation, NetworkParams

ANALYTIC_SWEEP = (
    "mode = analytic\n"
    "sweep_variable = theta_bar\n"
    "sweep_start = 10\nsweep_stop = 40\nsweep_steps = 4\n"
)


def _cfg_file(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_csv_schema_is_stable():
    rows = run_sweep(parse_config(ANALYTIC_SWEEP))
    buf = io.StringIO()
    write_csv(rows, buf)
    parsed = list(csv.reader(io.StringIO(buf.getvalue())))
    assert parsed[0] == list(CSV_COLUMNS)
    assert len(parsed) == 5


def test_analytic_mode_leaves_mc_cells_empty():
    rows = run_sweep(parse_config(ANALYTIC_SWEEP))
    for row, theta in zip(rows, (10.0, 25.0)):
        assert row["p_mc"] is None and row["mc_stderr"] is None
        assert row["z_score"] is None and row["seed"] is None
    p = NetworkParams(density=1e-6)
    want = downlink_coverage(p, ConstantElevation(math.radians(10.0))).value
    assert rows[0]["p_analytic"] == pytest.approx(want, rel=1e-12)


def test_sweep_writes_csv_file_and_exits_clean(tmp_path):
    cfg = _cfg_file(tmp_path, ANALYTIC_SWEEP)
    out = tmp_path / "rows.csv"
    assert main(["sweep", cfg, "--output", str(out)]) == EXIT_OK
    with open(out, newline="", encoding="utf-8") as fh:
        parsed = list(csv.DictReader(fh))
    assert [float(r["sweep_value"]) for r in parsed] == [10.0, 20.0, 30.0, 40.0]
    assert all(r["p_mc"] == "" for r in parsed)
    assert all(float(r["p_analytic"]) > 0.5 for r in parsed)


def test_sweep_json_format(tmp_path, capsys):
    cfg = _cfg_file(tmp_path, ANALYTIC_SWEEP + "output_format = json\n")
    assert main(["sweep", cfg]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert set(CSV_COLUMNS) <= set(rows[0])


def test_sweep_z_scores_consistent(tmp_path, capsys):
    doc = (
        "n_samples = 3000\n"
        "sweep_variable = lambda\n"
        "sweep_start = 1e-7\nsweep_stop = 1e-6\nsweep_steps = 2\n"
        "output_format = json\n"
    )
    assert main(["sweep", _cfg_file(tmp_path, doc)]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    for row in rows:
        assert row["n_samples"] == 3000
        z = (row["p_analytic"] - row["p_mc"]) / row["mc_stderr"]
        assert row["z_score"] == pytest.approx(z, rel=1e-12)
        assert abs(row["z_score"]) < 5.0


def test_parallel_workers_match_serial():
    doc = (
        "n_samples = 2000\n"
        "sweep_variable = lambda\n"
        "sweep_start = 1e-7\nsweep_stop = 1e-6\nsweep_steps = 3\n"
    )
    cfg = parse_config(doc)
    serial = run_sweep(cfg, workers=1)
    parallel = run_sweep(cfg, workers=2)
    for a, b in zip(serial, parallel):
        a = {k: v for k, v in a.items() if k != "wall_ms"}
        b = {k: v for k, v in b.items() if k != "wall_ms"}
        assert a == b


def test_missing_config_file_exits_config(tmp_path, capsys):
    assert main(["sweep", str(tmp_path / "nope.cfg")]) == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err


def test_invalid_config_exits_config(tmp_path, capsys):
    cfg = _cfg_file(tmp_path, "densty = 1e-6\n")
    assert main(["point", cfg]) == EXIT_CONFIG
    assert "densty" in capsys.readouterr().err


def test_sweep_requires_sweep_block(tmp_path, capsys):
    cfg = _cfg_file(tmp_path, "lambda = 1e-6\n")
    assert main(["sweep", cfg]) == EXIT_CONFIG
    assert "sweep" in capsys.readouterr().err


def test_bad_sweep_point_exits_numeric_but_completes(tmp_path, capsys):
    # theta_bar = 0 is outside the gamma-tan domain; the rest still runs
    doc = (
        "mode = analytic\nelevation = gamma_tan\nshape = 3\n"
        "sweep_variable = theta_bar\n"
        "sweep_start = 0\nsweep_stop = 20\nsweep_steps = 3\n"
    )
    cfg = _cfg_file(tmp_path, doc)
    out = tmp_path / "rows.csv"
    assert main(["sweep", cfg, "--output", str(out)]) == EXIT_NUMERIC
    err = capsys.readouterr().err
    assert "theta_bar = 0.0" in err
    with open(out, newline="", encoding="utf-8") as fh:
        parsed = list(csv.DictReader(fh))
    assert len(parsed) == 3
    assert parsed[0]["p_analytic"] == "nan"
    assert float(parsed[2]["p_analytic"]) > 0.5


def test_point_reports_json(tmp_path, capsys):
    cfg = _cfg_file(tmp_path, "mode = analytic\ntheta_bar_deg = 20\n")
    assert main(["point", cfg]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert "sweep_var" not in result and "sweep_value" not in result
    assert result["metric"] == "downlink" and result["mode"] == "analytic"
    want = downlink_coverage(
        NetworkParams(density=1e-6), ConstantElevation(math.radians(20.0))
    ).value
    assert result["p_analytic"] == pytest.approx(want, rel=1e-12)
    assert result["p_mc"] is None


def test_point_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("mode = analytic\n"))
    assert main(["point", "-"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["p_analytic"] > 0.5


def _fake_report(passed):
    return {
        "suite": "numerics",
        "n_checks": 2,
        "n_failed": 0 if passed else 1,
        "passed": passed,
        "checks": [
            {"name": "alpha", "passed": True, "detail": ""},
            {"name": "bravo", "passed": passed, "detail": "" if passed else "off by 2"},
        ],
    }


@pytest.mark.parametrize("passed,code", [(True, EXIT_OK), (False, EXIT_VALIDATION)])
def test_validate_exit_reflects_report(monkeypatch, capsys, passed, code):
    monkeypatch.setattr(
        "uavcov.validation.run_suite",
        lambda suite, n_samples=None, master_seed=None: _fake_report(passed),
    )
    assert main(["validate", "numerics"]) == code
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["passed"] is passed
    assert ("FAIL bravo (off by 2)" in captured.err) is not passed
    assert "numerics:" in captured.err


def test_validate_numerics_suite_end_to_end(capsys):
    assert main(["validate", "numerics"]) == EXIT_OK
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["passed"] and report["n_failed"] == 0
    assert captured.err.count("PASS") == report["n_checks"]


def test_unknown_suite_rejected_by_parser():
    with pytest.raises(SystemExit):
        main(["validate", "everything"])
