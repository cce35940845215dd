"""Command-line front end: ``run``, ``sweep`` and ``presets``.

Exit codes: 0 success, 1 I/O or parse error, 2 validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import scenario_file
from .scenario_file import ScenarioFileError, format_scenario, load_preset, load_scenario
from .sim import InvalidScenario, RunSummary, TrialRecord, run_scenario

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2

TRACE_HEADER = [
    "trial",
    "truth_x",
    "truth_y",
    "wifi_x",
    "wifi_y",
    "odo_x",
    "odo_y",
    "fused_x",
    "fused_y",
    "err_wifi",
    "err_odo",
    "err_fused",
    "outlier",
]

SWEEP_HEADER = [
    "param_value",
    "seed",
    "mean_wifi",
    "mean_odo",
    "mean_fused",
    "min_wifi",
    "min_odo",
    "min_fused",
    "max_wifi",
    "max_odo",
    "max_fused",
    "outlier_rate",
]


def _num(value: float | None) -> str:
    # str.format rounds the exact binary value half-to-even at 6 places
    return "" if value is None else f"{value:.6f}"


def trace_rows(records: list[TrialRecord]) -> list[list[str]]:
    rows = []
    for r in records:
        wifi = r.est_wifi
        rows.append(
            [
                str(r.trial_index),
                _num(r.truth.x),
                _num(r.truth.y),
                _num(wifi.x if wifi else None),
                _num(wifi.y if wifi else None),
                _num(r.est_odo.x),
                _num(r.est_odo.y),
                _num(r.est_fused.x),
                _num(r.est_fused.y),
                _num(r.err_wifi),
                _num(r.err_odo),
                _num(r.err_fused),
                "1" if r.wifi_was_outlier else "0",
            ]
        )
    return rows


def format_trace(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    writer.writerows(trace_rows(records))
    return buf.getvalue()


def format_summary(name: str, summary: RunSummary) -> str:
    """Mean/min/max error per method, in centimetres."""
    lines = [
        f"{name}: {summary.trial_count} trials, Wi-Fi outlier rate {summary.outlier_rate:.1%}",
        f"{'method':<10} {'mean (cm)':>10} {'min (cm)':>10} {'max (cm)':>10}",
    ]
    for label, stats in (("wifi", summary.wifi), ("odometry", summary.odo), ("proposed", summary.fused)):
        if stats is None:
            lines.append(f"{label:<10} {'n/a':>10} {'n/a':>10} {'n/a':>10}")
        else:
            lines.append(f"{label:<10} {stats.mean * 100:10.1f} {stats.min * 100:10.1f} {stats.max * 100:10.1f}")
    return "\n".join(lines)


def cmd_run(scenario_path: str, output_path: str | None, overrides: list[str], seed: int | None = None) -> int:
    if seed is not None:
        overrides = [f"run.seed={seed}", *overrides]
    try:
        scenario = load_scenario(scenario_path, overrides)
        records, summary = run_scenario(scenario)
    except ScenarioFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidScenario as exc:
        print(f"error: invalid scenario {scenario_path}: {exc}", file=sys.stderr)
        return EXIT_INVALID

    trace = format_trace(records)
    if output_path is None:
        sys.stdout.write(trace)
    else:
        try:
            Path(output_path).write_text(trace)
        except OSError as exc:
            print(f"error: cannot write {output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_IO
    print(format_summary(scenario.name, summary))
    return EXIT_OK


def _sweep_one(args: tuple[str, list[str], str, int]) -> list[str]:
    scenario_path, overrides, value, seed = args
    scenario = load_scenario(scenario_path, overrides)
    _, s = run_scenario(scenario)
    wifi = s.wifi
    return [
        value,
        str(seed),
        _num(wifi.mean if wifi else None),
        _num(s.odo.mean),
        _num(s.fused.mean),
        _num(wifi.min if wifi else None),
        _num(s.odo.min),
        _num(s.fused.min),
        _num(wifi.max if wifi else None),
        _num(s.odo.max),
        _num(s.fused.max),
        _num(s.outlier_rate),
    ]


def cmd_sweep(
    scenario_path: str,
    parameter: str,
    values: list[str],
    seeds: int,
    output_path: str | None = None,
    overrides: list[str] | None = None,
    jobs: int = 1,
) -> int:
    """Run every (value, seed) pair and write one summary row per run.

    Seeds run from the scenario's own seed upward. Rows come out in
    value-major, seed-minor order regardless of ``jobs``.
    """
    overrides = list(overrides or [])
    if parameter not in scenario_file.numeric_keys():
        print(
            f"error: unknown sweep parameter {parameter!r}; choose from {', '.join(scenario_file.numeric_keys())}",
            file=sys.stderr,
        )
        return EXIT_INVALID
    if seeds < 1:
        print("error: --seeds must be at least 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        base = load_scenario(scenario_path, overrides)
        tasks = []
        for value in values:
            for i in range(seeds):
                seed = base.seed + i
                run_overrides = [*overrides, f"{parameter}={value}", f"run.seed={seed}"]
                load_scenario(scenario_path, run_overrides).validate()
                tasks.append((scenario_path, run_overrides, value, seed))
    except ScenarioFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidScenario as exc:
        print(f"error: invalid scenario {scenario_path}: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_one, tasks))
    else:
        rows = [_sweep_one(t) for t in tasks]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    if output_path is None:
        sys.stdout.write(buf.getvalue())
    else:
        try:
            Path(output_path).write_text(buf.getvalue())
        except OSError as exc:
            print(f"error: cannot write {output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_presets(export_dir: str | None = None) -> int:
    print("# name n waypoints")
    for name in scenario_file.PRESET_NAMES:
        scenario = load_preset(name)
        print(f"{name} {scenario.channel.n} {len(scenario.waypoints)}")
        if export_dir is not None:
            out = Path(export_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{name}{scenario_file.PRESET_SUFFIX}").write_text(format_scenario(scenario))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridloc", description="Hybrid Wi-Fi/odometry localization simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario and write its per-trial CSV trace")
    run.add_argument("scenario", help="scenario file, or presets/<office|mec|tba>")
    run.add_argument("-o", "--output", help="CSV trace path (default: stdout)")
    run.add_argument("--seed", type=int, help="override run.seed")
    run.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                     help="override a scenario key, e.g. channel.sigma=0 (repeatable)")

    sweep = sub.add_parser("sweep", help="sweep one numeric parameter over values and seeds")
    sweep.add_argument("scenario")
    sweep.add_argument("--param", required=True, help="dotted key, e.g. fusion.xi")
    sweep.add_argument("--values", required=True, help="comma-separated values")
    sweep.add_argument("--seeds", type=int, default=1, help="seeds per value, counting up from run.seed")
    sweep.add_argument("-o", "--output", help="summary CSV path (default: stdout)")
    sweep.add_argument("--seed", type=int, help="override the first seed")
    sweep.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    sweep.add_argument("-j", "--jobs", type=int, default=1)

    presets = sub.add_parser("presets", help="list built-in environment presets")
    presets.add_argument("--export", metavar="DIR", help="also write each preset as a scenario file into DIR")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.scenario, args.output, args.overrides, args.seed)
    if args.command == "sweep":
        overrides = list(args.overrides)
        if args.seed is not None:
            overrides.insert(0, f"run.seed={args.seed}")
        values = [v.strip() for v in args.values.split(",") if v.strip()]
        return cmd_sweep(args.scenario, args.param, values, args.seeds, args.output, overrides, args.jobs)
    return cmd_presets(args.export)


if __name__ == "__main__":
    sys.exit(main())
