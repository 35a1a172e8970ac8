"""
NPDC Lab command line
Runs experiment matrices, speed-up sweeps, divergence checks and table rendering
"""

import argparse
import asyncio
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from app.background.tasks import run_experiment, speedup_sweep
from app.core.config import settings
from app.core.exceptions import (
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_RUNTIME_FAILURE,
    BaseOptimizationException,
    ValidationException,
    exit_code_for,
)
from app.core.experiment_loader import load_experiment_config
from app.services.analysis import div_parallel, div_serial, gap_ratio, simulate_divergence
from app.services.reporting import render_tables
from app.services.search_kernel import RngStream
from app.utils.algorithm_constants import SpeedupMode
from app.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)


class LabArgumentParser(argparse.ArgumentParser):
    """Usage errors are configuration errors"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG_ERROR, f"{self.prog}: error: {message}\n")


def _add_experiment_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="KEY=value experiment file")
    parser.add_argument("--problem", help="structure:base:D<n>[:m<k>][:s<seed>]")
    parser.add_argument("--algo", help="npdc, npdc-random, cc:<grouping>:<workflow> or DC-NG, DC-RG-P, ...")
    parser.add_argument("--budget", type=int, help="Evaluation budget T")
    parser.add_argument("--lambda", dest="lanes", type=int, help="NPDC lanes")
    parser.add_argument("--seed", type=int, help="Base seed; run k uses seed + k")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.add_argument("--reps", type=int, help="Repetitions")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--delay", type=float, help="Injected seconds per evaluation")
    parser.add_argument("--order", choices=["ascending", "descending", "random"], help="CC group order")
    parser.add_argument("--group-count", type=int, help="M for random grouping")
    parser.add_argument("--epsilon", type=float, help="Differential grouping threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(prog="npdc-lab", description=settings.APP_NAME)
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    parser.add_argument("--json-logs", action="store_true", help="JSON log lines")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Execute the seeded repetitions of one configuration")
    _add_experiment_arguments(run)
    run.add_argument("--batch-size", type=int, help="Repetitions run concurrently")

    sweep = commands.add_parser("sweep", help="Measure NPDC speed-up across worker counts")
    _add_experiment_arguments(sweep)
    sweep.add_argument("--worker-counts", default="1,2,4,8", help="Comma-separated, must include 1")
    sweep.add_argument("--mode", choices=[m.value for m in SpeedupMode], help="Timing mode")

    render = commands.add_parser("render", help="Aggregate a run directory into summary tables")
    render.add_argument("directory", help="Experiment directory")
    render.add_argument("--out", help="Table directory (default <directory>/tables)")
    render.add_argument("--alpha", type=float, help="Significance level")

    divergence = commands.add_parser("divergence", help="Closed-form vs. simulated divergence")
    divergence.add_argument("--p", type=float, required=True, help="Retention probability")
    divergence.add_argument("--groups", type=int, required=True, help="M")
    divergence.add_argument("--trials", type=int, default=1_000_000)
    divergence.add_argument("--seed", type=int, default=0)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "PROBLEM": args.problem,
        "ALGO": args.algo,
        "BUDGET": args.budget,
        "LAMBDA": args.lanes,
        "SEED": args.seed,
        "WORKERS": args.workers,
        "REPETITIONS": args.reps,
        "OUT": args.out,
        "DELAY": args.delay,
        "ORDER": args.order,
        "GROUP_COUNT": args.group_count,
        "EPSILON": args.epsilon,
    }


def _parse_worker_counts(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise ValidationException(f"Invalid worker counts {text!r}")


def _command_run(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config, _overrides(args))
    records = asyncio.run(run_experiment(config, batch_size=args.batch_size))
    failed = [r for r in records if not r.succeeded]
    for record in records:
        print(json.dumps({
            "run_id": record.run_id,
            "status": record.status.value,
            "final_error": record.final_error,
            "consumed": record.consumed,
        }))
    return EXIT_RUNTIME_FAILURE if failed else EXIT_OK


def _command_sweep(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config, _overrides(args))
    rows = asyncio.run(speedup_sweep(config, _parse_worker_counts(args.worker_counts), mode=args.mode))
    for row in rows:
        print(row.model_dump_json())
    return EXIT_OK


def _command_render(args: argparse.Namespace) -> int:
    written = render_tables(args.directory, args.out, args.alpha)
    for name, path in written.items():
        print(f"{name}\t{path}")
    return EXIT_OK


def _command_divergence(args: argparse.Namespace) -> int:
    serial, parallel = simulate_divergence(args.p, args.groups, args.trials, RngStream.from_seed(args.seed))
    result = {
        "p": args.p,
        "groups": args.groups,
        "div_serial": div_serial(args.p, args.groups),
        "div_parallel": div_parallel(args.p, args.groups),
        "simulated_serial": serial,
        "simulated_parallel": parallel,
    }
    if args.groups >= 2 and 0.0 < args.p < 1.0:
        result["gap_ratio"] = gap_ratio(args.p, args.groups)
    print(json.dumps(result))
    return EXIT_OK


COMMANDS = {
    "run": _command_run,
    "sweep": _command_sweep,
    "render": _command_render,
    "divergence": _command_divergence,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point

    Returns:
        0 on success, 1 on configuration errors, 2 on runtime failures
    """
    args = build_parser().parse_args(argv)
    if args.log_level or args.json_logs:
        setup_logging(level=args.log_level, json_output=args.json_logs or None)

    try:
        return COMMANDS[args.command](args)
    except BaseOptimizationException as e:
        logger.error(f"{args.command} failed: {str(e.detail)}")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {str(e)}")
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
