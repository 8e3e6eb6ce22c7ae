"""
Main entry point for the dkk-lab command line.
"""

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger
from pydantic import ValidationError

from dkk_lab import __version__
from dkk_lab.cli import cmd_recheck, get_command, list_commands
from dkk_lab.config import ExperimentConfig, LabConfig, load_config, load_experiment
from dkk_lab.error import ConfigurationError, DkkLabError, ErrorCode
from dkk_lab.execution import RowRunner
from dkk_lab.metrics import metrics
from dkk_lab.reports import ConstantsReport, render, write_report

# Load environment variables from .env file
load_dotenv()

# Run options a flag may override in the experiment file
OVERRIDES = ("seed", "out", "format", "timings")


def setup_logging(log_level: str = "INFO") -> None:
    """Configure logging with loguru."""
    # Remove default handler
    logger.remove()

    log_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{message}</cyan>"
    )

    log_levels = {
        "DEBUG": "DEBUG",
        "INFO": "INFO",
        "WARNING": "WARNING",
        "ERROR": "ERROR",
    }
    level = log_levels.get(log_level.upper(), "INFO")

    logger.add(sys.stderr, format=log_format, level=level, colorize=True)


def _run_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from overwriting a flag given before it
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--config", type=Path, metavar="PATH", default=argparse.SUPPRESS)
    options.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS)
    options.add_argument("--out", type=Path, metavar="PATH", default=argparse.SUPPRESS)
    options.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    options.add_argument(
        "--timings", action="store_true", default=argparse.SUPPRESS, help="Record per-row runtimes"
    )
    return options


def build_parser() -> argparse.ArgumentParser:
    options = _run_options()
    parser = argparse.ArgumentParser(
        prog="dkk-lab",
        description="Conditionality, greedy and embedding experiments on DKK spaces",
        parents=[options],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument(
        "--recheck", type=Path, metavar="PATH", help="Re-evaluate every witness of a stored report"
    )

    subparsers = parser.add_subparsers(dest="command")
    for name in list_commands():
        handler = get_command(name)
        summary = (handler.__doc__ or "").strip().splitlines()[0] if handler else ""
        subparsers.add_parser(name, parents=[options], help=summary)
    return parser


def resolve_experiment(args: argparse.Namespace) -> ExperimentConfig:
    """The experiment file (or defaults) with command-line overrides applied."""
    path = getattr(args, "config", None)
    cfg = load_experiment(path) if path is not None else ExperimentConfig()

    updates = {key: getattr(args, key) for key in OVERRIDES if hasattr(args, key)}
    if not updates:
        return cfg

    data = cfg.echo()
    data["run"].update({k: str(v) if isinstance(v, Path) else v for k, v in updates.items()})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(
            "Invalid command-line override",
            details=str(e),
            code=ErrorCode.INVALID_PARAMETER,
        ) from e


def run_command(name: str, cfg: ExperimentConfig, lab_config: LabConfig) -> ConstantsReport:
    handler = get_command(name)
    if handler is None:
        raise ConfigurationError(
            f"Unknown command '{name}'",
            suggestion=f"Use one of {list_commands()}",
        )

    metrics.set_run_info(__version__, name)
    runner = RowRunner(max_workers=lab_config.execution.max_workers, command=name)
    logger.info("Running command", command=name, seed=cfg.run.seed)
    report: ConstantsReport = handler(cfg, runner)
    logger.info("Command finished", command=name, rows=len(report.rows), failed=report.failed)
    return report


def run(args: argparse.Namespace, lab_config: LabConfig) -> int:
    cfg = resolve_experiment(args)
    name = args.command or cfg.run.command
    if name is None:
        raise ConfigurationError(
            "No command given",
            suggestion="Pass a subcommand or set command in [run]",
        )

    report = run_command(name, cfg, lab_config)
    if cfg.run.out is not None:
        write_report(report, cfg.run.out, cfg.run.format)
    else:
        sys.stdout.write(render(report, cfg.run.format))

    if lab_config.metrics_textfile is not None:
        metrics.write_textfile(lab_config.metrics_textfile)
    return 1 if report.failed else 0


def run_recheck(path: Path) -> int:
    result = cmd_recheck(path)
    sys.stdout.write(json.dumps(result.to_dict(), indent=2) + "\n")
    if not result.ok:
        logger.warning("Witness mismatches", path=str(path), count=len(result.mismatches))
    return 0 if result.ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    try:
        lab_config = load_config()
        setup_logging(args.log_level or lab_config.log_level)
        if args.recheck is not None:
            return run_recheck(args.recheck)
        return run(args, lab_config)
    except KeyboardInterrupt:
        return 130
    except DkkLabError as e:
        logger.debug("Command failed", code=e.code.value, category=e.category.value)
        print(f"Error [{e.code.value}]: {e.to_user_message()}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
