"""
Command-line entry point

Runs one experiment (--data) or a manifest of experiments (--suite) and
writes the report to standard output. Diagnostics and logs go to standard
error.

Exit status:
    0  every experiment ran and every verification passed
    1  some experiment failed or a rule set did not verify
    2  invalid arguments or input

Usage:
    rrules-bench --data paper-example --algorithm both --test-fraction 0
    rrules-bench --data tic-tac-toe.data --no-header --test-fraction 0.2 --seed 1
    rrules-bench --data paper-example --algorithm rrules --dump-rules
    rrules-bench --suite benchmarks/uci.jsonl --format csv
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import RuleToolkitError
from app.core.logging import configure_logging, get_logger
from app.schemas.experiment import ExperimentConfig, SuiteReport
from app.services.experiment_service import ExperimentService, load_manifest, ratio_summaries
from app.services.report_service import render

logger = get_logger(__name__)

LOG_LEVELS = {0: "WARNING", 1: "INFO", 2: "DEBUG"}


def _class_column(value: str) -> Union[int, str]:
    try:
        return int(value)
    except ValueError:
        return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrules-bench",
        description="Induce RULES / RRULES rule sets and compare them.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", help="dataset file or built-in fixture (paper-example)")
    source.add_argument("--suite", help="JSON Lines manifest, one experiment per line")
    parser.add_argument("--algorithm", choices=("rules", "rrules", "both"))
    parser.add_argument("--test-fraction", type=float, help="held-out share in [0, 1); 0 trains only")
    parser.add_argument("--seed", type=int, help="seed of the split shuffle")
    parser.add_argument("--bins", type=int, help="equal-width bins for numeric columns")
    parser.add_argument("--repeats", type=int, help="timed inductions per median; 0 disables timing")
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--dump-rules", action="store_true", help="print the induced rules")
    parser.add_argument(
        "--verify",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="check purity, completeness and usefulness of every rule set",
    )
    parser.add_argument("--no-header", action="store_true", help="first line is data, not column names")
    parser.add_argument("--class-column", type=_class_column, help="class column index or header name")
    parser.add_argument("--test-data", help="external test file encoded against the training schema")
    parser.add_argument("--jobs", type=int, help="worker threads for untimed suites")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return parser


def _config_from(args: argparse.Namespace) -> ExperimentConfig:
    values: Dict[str, Any] = {
        "data": args.data,
        "algorithm": args.algorithm,
        "test_fraction": args.test_fraction,
        "seed": args.seed,
        "n_bins": args.bins,
        "repeats": args.repeats,
        "format": args.format,
        "dump_rules": args.dump_rules,
        "verify": args.verify,
        "has_header": not args.no_header,
        "class_column": args.class_column,
        "test_data": args.test_data,
        "verbosity": min(args.verbose, 2),
    }
    if args.test_data is not None and args.test_fraction is None:
        values["test_fraction"] = 0.0
    return ExperimentConfig(**{key: value for key, value in values.items() if value is not None})


def _fail(message: str, err: TextIO) -> int:
    print(f"rrules-bench: error: {message}", file=err)
    return 2


def run_experiment(
    config: ExperimentConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None
) -> int:
    """
    Run one experiment and write its report

    Returns:
        int: Exit status (0 ok, 1 failed verification, 2 invalid input)
    """
    out = out or sys.stdout
    err = err or sys.stderr
    service = ExperimentService()
    try:
        results = service.run_experiment(config)
    except RuleToolkitError as exc:
        logger.error("Experiment aborted", error=exc.message, **exc.details)
        return _fail(exc.message, err)
    report = SuiteReport(results=results, ratios=ratio_summaries(results))
    out.write(render(report, config.format))
    return 0 if report.succeeded else 1


def run_suite(
    configs: Sequence[ExperimentConfig],
    output_format: str = "table",
    jobs: Optional[int] = None,
    out: Optional[TextIO] = None,
) -> int:
    """
    Run a manifest and write the aggregated report

    Returns:
        int: 0 when every experiment ran and verified, 1 otherwise
    """
    out = out or sys.stdout
    report = ExperimentService(max_workers=jobs).run_suite(configs)
    out.write(render(report, output_format))  # type: ignore[arg-type]
    return 0 if report.succeeded else 1


def main(
    argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(level=LOG_LEVELS[min(args.verbose, 2)], stream=err)

    if args.suite is not None:
        if args.test_data is not None:
            return _fail("--test-data cannot be combined with --suite", err)
        try:
            configs = load_manifest(args.suite)
        except RuleToolkitError as exc:
            return _fail(exc.message, err)
        return run_suite(configs, args.format, args.jobs if args.jobs is not None else settings.MAX_SUITE_WORKERS, out)

    try:
        config = _config_from(args)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        return _fail(f"{location}: {first['msg']}" if location else first["msg"], err)
    return run_experiment(config, out, err)


if __name__ == "__main__":
    sys.exit(main())
