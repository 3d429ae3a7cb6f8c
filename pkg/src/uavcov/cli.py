"""Command-line front-end: sweep, point, validate.

`sweep <config>` runs the configured parameter sweep and writes one row per
point (CSV by default); `point <config>` evaluates the base configuration
once and prints JSON; `validate <suite>` runs a cross-check suite, prints
the JSON report to stdout and PASS/FAIL lines to stderr.

Exit codes: 0 success, 1 validation failure, 2 config error, 3 numeric
error in at least one point (failed points carry nan cells; the run still
completes).
"""

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import validation
from .analytic import cellfree_coverage, downlink_coverage
from .config import ConfigError, apply_sweep_value, parse_config
from .montecarlo import estimate_cellfree, estimate_downlink

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

CSV_COLUMNS = (
    "sweep_var",
    "sweep_value",
    "p_analytic",
    "p_mc",
    "mc_stderr",
    "z_score",
    "n_samples",
    "seed",
    "wall_ms",
)


def _analytic_value(metric, params, elev):
    if metric == "cellfree":
        return cellfree_coverage(params, elev).value
    return downlink_coverage(params, elev).value


def _mc_estimate(metric, params, elev, n_samples, seed, guard_tolerance):
    fn = estimate_cellfree if metric == "cellfree" else estimate_downlink
    return fn(params, elev, n_samples, seed, guard_tolerance=guard_tolerance)


def evaluate_point(task):
    """Worker: one sweep point.  task is a plain tuple so it pickles.

    Returns a row dict; numeric failures set the affected cells to nan and
    carry the message in 'error' instead of raising.
    """
    (sweep_var, sweep_value, metric, mode, params, elev, n_samples, seed,
     guard_tolerance) = task
    row = {
        "sweep_var": sweep_var,
        "sweep_value": sweep_value,
        "p_analytic": None,
        "p_mc": None,
        "mc_stderr": None,
        "z_score": None,
        "n_samples": None,
        "seed": None,
        "wall_ms": None,
        "error": None,
    }
    start = time.perf_counter()
    errors = []
    if mode in ("analytic", "both"):
        try:
            row["p_analytic"] = _analytic_value(metric, params, elev)
        except Exception as exc:
            row["p_analytic"] = float("nan")
            errors.append(f"analytic: {exc}")
    if mode in ("montecarlo", "both"):
        row["n_samples"] = n_samples
        row["seed"] = seed
        try:
            est = _mc_estimate(metric, params, elev, n_samples, seed, guard_tolerance)
            row["p_mc"] = est.mean
            row["mc_stderr"] = est.std_error
        except Exception as exc:
            row["p_mc"] = float("nan")
            row["mc_stderr"] = float("nan")
            errors.append(f"montecarlo: {exc}")
    if mode == "both":
        pa, pm, se = row["p_analytic"], row["p_mc"], row["mc_stderr"]
        if pa is not None and pm is not None and np.isfinite(pa) and np.isfinite(pm):
            diff = pa - pm
            if se and se > 0.0:
                row["z_score"] = diff / se
            else:
                row["z_score"] = 0.0 if diff == 0.0 else float("inf")
        else:
            row["z_score"] = float("nan")
    row["wall_ms"] = round((time.perf_counter() - start) * 1e3, 3)
    if errors:
        row["error"] = "; ".join(errors)
    return row


def _build_tasks(cfg):
    axis = cfg.sweep
    if axis is None:
        raise ConfigError("sweep_variable", "the sweep command needs a sweep")
    values = axis.values()
    seeds = np.random.SeedSequence(cfg.master_seed).generate_state(
        len(values), dtype=np.uint64
    )
    tasks = []
    for value, seed in zip(values, seeds):
        try:
            params, elev = apply_sweep_value(cfg, float(value))
        except Exception as exc:
            tasks.append(("__bad__", float(value), str(exc)))
            continue
        tasks.append(
            (
                axis.variable,
                float(value),
                cfg.metric,
                cfg.mode,
                params,
                elev,
                cfg.n_samples,
                int(seed),
                cfg.guard_tolerance,
            )
        )
    return tasks


def _bad_row(variable, value, message):
    return {
        "sweep_var": variable,
        "sweep_value": value,
        "p_analytic": float("nan"),
        "p_mc": float("nan"),
        "mc_stderr": float("nan"),
        "z_score": float("nan"),
        "n_samples": None,
        "seed": None,
        "wall_ms": None,
        "error": message,
    }


def run_sweep(cfg, workers=1):
    """Evaluate every sweep point; deterministic row order by sweep index."""
    tasks = _build_tasks(cfg)
    good = [t for t in tasks if t[0] != "__bad__"]
    if workers > 1 and len(good) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = iter(list(pool.map(evaluate_point, good)))
    else:
        computed = iter([evaluate_point(t) for t in good])
    rows = []
    variable = cfg.sweep.variable
    for t in tasks:
        if t[0] == "__bad__":
            rows.append(_bad_row(variable, t[1], t[2]))
        else:
            rows.append(next(computed))
    return rows


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows, stream):
    writer = csv.writer(stream)
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[col]) for col in CSV_COLUMNS])


def _jsonable(row):
    out = {}
    for key, value in row.items():
        if isinstance(value, float) and not np.isfinite(value):
            out[key] = None
        else:
            out[key] = value
    return out


def write_json(rows, stream):
    json.dump([_jsonable(r) for r in rows], stream, indent=2, default=float)
    stream.write("\n")


def _read_config(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_sweep(args):
    try:
        cfg = parse_config(_read_config(args.config))
        if cfg.sweep is None:
            raise ConfigError("sweep_variable", "the sweep command needs a sweep")
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rows = run_sweep(cfg, workers=args.workers)
    out_path = args.output if args.output is not None else cfg.output_path
    fmt = args.format if args.format is not None else cfg.output_format
    if out_path is None or out_path == "-":
        _write_rows(rows, sys.stdout, fmt)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            _write_rows(rows, fh, fmt)
    failed = [r for r in rows if r["error"]]
    for r in failed:
        print(
            f"point {r['sweep_var']} = {r['sweep_value']}: {r['error']}",
            file=sys.stderr,
        )
    return EXIT_NUMERIC if failed else EXIT_OK


def _write_rows(rows, stream, fmt):
    if fmt == "json":
        write_json(rows, stream)
    else:
        write_csv(rows, stream)


def cmd_point(args):
    try:
        cfg = parse_config(_read_config(args.config))
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    seed = int(
        np.random.SeedSequence(cfg.master_seed).generate_state(1, dtype=np.uint64)[0]
    )
    task = (
        "",
        float("nan"),
        cfg.metric,
        cfg.mode,
        cfg.params,
        cfg.elevation,
        cfg.n_samples,
        seed,
        cfg.guard_tolerance,
    )
    row = evaluate_point(task)
    result = _jsonable(row)
    del result["sweep_var"], result["sweep_value"]
    result["metric"] = cfg.metric
    result["mode"] = cfg.mode
    json.dump(result, sys.stdout, indent=2, default=float)
    sys.stdout.write("\n")
    if row["error"]:
        print(f"error: {row['error']}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_validate(args):
    try:
        report = validation.run_suite(
            args.suite, n_samples=args.n_samples, master_seed=args.seed
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    json.dump(report, sys.stdout, indent=2, default=float)
    sys.stdout.write("\n")
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        detail = check.get("detail") or ""
        print(f"{status} {check['name']}" + (f" ({detail})" if detail else ""),
              file=sys.stderr)
    print(
        f"{report['suite']}: {report['n_checks'] - report['n_failed']}/"
        f"{report['n_checks']} passed",
        file=sys.stderr,
    )
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="uavcov",
        description="Aerial-base-station coverage: analytic vs Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the configured parameter sweep")
    p_sweep.add_argument("config", help="config file path, or - for stdin")
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="worker processes (default 1)")
    p_sweep.add_argument("--output", default=None,
                         help="override output path (- for stdout)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default=None,
                         help="override output format")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_point = sub.add_parser("point", help="evaluate the base config once")
    p_point.add_argument("config", help="config file path, or - for stdin")
    p_point.set_defaults(fn=cmd_point)

    p_val = sub.add_parser("validate", help="run a cross-check suite")
    p_val.add_argument("suite", choices=validation.SUITES)
    p_val.add_argument("--n-samples", type=int, default=None,
                       help="override Monte Carlo sample count")
    p_val.add_argument("--seed", type=int, default=None,
                       help="override the suite master seed")
    p_val.set_defaults(fn=cmd_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
