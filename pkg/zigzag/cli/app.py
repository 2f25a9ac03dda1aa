"""
Command-line front end.

Subcommands:
    run      trajectories of one strategy from a set of start points
    scan     criterion-field grid and zero-crossing curves of a preset
    eigen    the principal-eigenvector experiment
    presets  list the registered test functions

Exit codes: 0 when every requested run completed (optimization failures
are data), 1 when a run raised, 2 on usage errors.
"""
import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from shared.config import Settings, get_settings
from shared.logging_config import configure_logging
from shared.record_sink import save_records

from .. import __version__
from ..driver.iteration import alpha_logs, run_batch
from ..driver.models import TrajectoryRecord
from ..lagrange.eigen import build_eigen_problem, eigen_model, eigen_run_record, sample_starts
from ..linesearch.models import Strategy
from ..objectives.presets import build_model, get_preset, landmarks, presets
from ..scanner.contours import classify_singularity, uncovered_landmarks, zero_curves
from ..scanner.export import curves_file, write_curves, write_grid
from ..scanner.models import CurveField
from ..scanner.sampling import scan
from .config import ExperimentConfig, load_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INCOMPLETE = 1
EXIT_USAGE = 2

TRAJECTORIES_FILE = "trajectories.jsonl"
ALPHA_LOGS_FILE = "alpha_logs.jsonl"
EIGEN_RUNS_FILE = "eigen_runs.jsonl"
SUMMARY_FILE = "summary.json"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zigzag",
        description="Newton's method with a zigzag line search on tau_check",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON experiment config")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--workers", type=int, help="worker processes")

    run_cmd = commands.add_parser("run", parents=[common], help="run trajectories")
    run_cmd.add_argument("--function", help="function preset name")
    run_cmd.add_argument("--strategy", choices=[s.value for s in Strategy])
    run_cmd.add_argument("--seed", type=int, help="sample starts in the window with this seed")
    run_cmd.add_argument("--count", type=int, help="number of sampled starts")

    scan_cmd = commands.add_parser("scan", parents=[common], help="scan criterion fields")
    scan_cmd.add_argument("--function", help="function preset name")
    scan_cmd.add_argument("--resolution", type=int, nargs=2, metavar=("NX", "NY"))
    scan_cmd.add_argument(
        "--window", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX")
    )

    eigen_cmd = commands.add_parser("eigen", parents=[common], help="eigenpair experiment")
    eigen_cmd.add_argument("--strategy", choices=[s.value for s in Strategy])
    eigen_cmd.add_argument("--seed", type=int, help="seed of C and of the start points")
    eigen_cmd.add_argument("--n", type=int, help="dimension of the covariance matrix")
    eigen_cmd.add_argument("--runs", type=int, help="number of runs")

    commands.add_parser("presets", help="list function presets")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge the config file (if any) with command-line flags; flags win."""
    data: Dict = {}
    if getattr(args, "config", None):
        data = load_config(args.config).model_dump(exclude_unset=True)

    for flag in ("function", "strategy", "workers", "window", "resolution"):
        value = getattr(args, flag, None)
        if value is not None:
            data[flag] = value
    if getattr(args, "out", None) is not None:
        data["output_dir"] = args.out

    if args.command == "run" and (args.seed is not None or args.count is not None):
        sampler = dict(data.get("sampler") or {})
        if args.seed is not None:
            sampler["seed"] = args.seed
        if args.count is not None:
            sampler["count"] = args.count
        data["sampler"] = sampler
        data.pop("starts", None)
    if args.command == "eigen":
        eigen = dict(data.get("eigen") or {})
        for flag in ("seed", "n", "runs"):
            value = getattr(args, flag)
            if value is not None:
                eigen[flag] = value
        data["eigen"] = eigen

    return ExperimentConfig(**data)


def _output_dir(config: ExperimentConfig, settings: Settings) -> Path:
    out = Path(config.output_dir or settings.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _workers(config: ExperimentConfig, settings: Settings) -> int:
    return config.workers or settings.workers


def _write_summary(out: Path, summary: Dict) -> None:
    path = out / SUMMARY_FILE
    path.write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _tally(records: Sequence[TrajectoryRecord]) -> Dict[str, int]:
    return dict(sorted(Counter(r.outcome.value for r in records).items()))


def cmd_run(config: ExperimentConfig, settings: Settings) -> int:
    """Run one strategy from every start point and write the records."""
    if config.function is None:
        raise ValueError("run needs a function preset (--function or config 'function')")
    preset = get_preset(config.function)
    model = build_model(preset)
    if config.starts is not None:
        starts = config.starts
    elif config.sampler is not None:
        starts = config.sampler.draw(config.window or preset.window)
    else:
        starts = preset.starts
    out = _output_dir(config, settings)

    results = run_batch(
        model, starts, config.strategy, config.zigzag, config.limits, _workers(config, settings)
    )
    records = [r.value for r in results if r.ok]
    failed = [r for r in results if not r.ok]
    save_records(out / TRAJECTORIES_FILE, records)
    save_records(out / ALPHA_LOGS_FILE, [log for r in records for log in alpha_logs(r)])

    converged = sum(1 for r in records if r.converged)
    _write_summary(
        out,
        {
            "command": "run",
            "function": preset.name,
            "strategy": config.strategy.value,
            "runs": len(starts),
            "completed": len(records),
            "converged": converged,
            "outcomes": _tally(records),
            "task_errors": {str(r.index): r.error for r in failed},
        },
    )

    print(f"{preset.name} / {config.strategy.value}: {converged}/{len(starts)} converged")
    for record in records:
        print(f"  {record.run_id}: {record.outcome.value:8s} {record.strategy_string}")
    return EXIT_INCOMPLETE if failed else EXIT_OK


def cmd_scan(config: ExperimentConfig, settings: Settings) -> int:
    """Scan a preset's window and write grid layers and curves."""
    if config.function is None:
        raise ValueError("scan needs a function preset (--function or config 'function')")
    preset = get_preset(config.function)
    model = build_model(preset)
    window = config.window or preset.window
    out = _output_dir(config, settings)

    grid = scan(model, window, config.resolution, _workers(config, settings))
    write_grid(grid, out)

    curves = {}
    for curve_field in CurveField:
        curves[curve_field] = zero_curves(grid, curve_field, config.zigzag.entry_threshold)
        write_curves(curves[curve_field], curves_file(out, curve_field))

    singularities = [
        classify_singularity(grid, curve).value for curve in curves[CurveField.DET_HESS]
    ]
    missing = uncovered_landmarks(grid, curves[CurveField.TAU_MINUS_ONE], landmarks(preset))
    _write_summary(
        out,
        {
            "command": "scan",
            "function": preset.name,
            "window": list(window),
            "resolution": list(config.resolution),
            "masked_cells": int(grid.mask.sum()),
            "curves": {f.value: len(c) for f, c in curves.items()},
            "singularities": singularities,
            "uncovered_landmarks": [list(m.location) for m in missing],
        },
    )

    nx, ny = grid.resolution
    print(f"{preset.name}: {nx}x{ny} cells, {int(grid.mask.sum())} masked")
    for curve_field, found in curves.items():
        print(f"  {curve_field.value}: {len(found)} curves")
    print(f"  singularities: {dict(Counter(singularities))}")
    return EXIT_OK


def cmd_eigen(config: ExperimentConfig, settings: Settings) -> int:
    """Seeded eigenpair runs on a random covariance matrix."""
    spec = config.eigen
    problem = build_eigen_problem(spec.n, spec.seed)
    model = eigen_model(problem)
    starts = sample_starts(problem, spec.seed, spec.runs)
    out = _output_dir(config, settings)

    results = run_batch(
        model, starts, config.strategy, config.zigzag, config.limits, _workers(config, settings)
    )
    trajectories = [r.value for r in results if r.ok]
    failed = [r for r in results if not r.ok]
    eigen_records = [eigen_run_record(problem, t, model) for t in trajectories]
    save_records(out / TRAJECTORIES_FILE, trajectories)
    save_records(out / EIGEN_RUNS_FILE, eigen_records)

    converged = sum(1 for r in eigen_records if r.converged)
    _write_summary(
        out,
        {
            "command": "eigen",
            "n": spec.n,
            "seed": spec.seed,
            "strategy": config.strategy.value,
            "runs": spec.runs,
            "completed": len(eigen_records),
            "converged": converged,
            "spectrum": [float(v) for v in problem.spectrum],
            "final_lambdas": [r.final_lambda for r in eigen_records],
            "task_errors": {str(r.index): r.error for r in failed},
        },
    )

    print(f"eigen n={spec.n} seed={spec.seed}: {converged}/{spec.runs} converged")
    for record in eigen_records:
        lam = "-" if record.final_lambda is None else f"{record.final_lambda:.10g}"
        print(f"  {record.run_id}: lambda={lam} steps={record.steps_taken}")
    return EXIT_INCOMPLETE if failed else EXIT_OK


def cmd_presets() -> int:
    for preset in presets():
        xmin, xmax, ymin, ymax = preset.window
        window = f"[{xmin:g}, {xmax:g}] x [{ymin:g}, {ymax:g}]"
        print(f"{preset.name:32s} {window:28s} {preset.description}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "scan": cmd_scan, "eigen": cmd_eigen}


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings)
    args = build_parser().parse_args(argv)

    if args.command == "presets":
        return cmd_presets()

    try:
        config = resolve_config(args)
    except (ValidationError, ValueError, OSError) as e:
        print(f"zigzag {args.command}: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](config, settings)
    except ValueError as e:
        print(f"zigzag {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
