"""
Command line interface.

```
noncolliding run CONFIG [--log-level LEVEL]
noncolliding report DIR [--output FILE]
```

Exit codes are 0 on success, 2 on a validation error and 3 on a numerical failure. Failures print
a JSON error record on stderr.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from noncolliding import __version__
from noncolliding.exceptions import ManifestError, NumericalFailure, ValidationFailure
from noncolliding.log import logger
from noncolliding.scenarios.artifacts import REPORT_NAME, emit_report, report_text, write_outputs
from noncolliding.scenarios.config import ScenarioConfig
from noncolliding.scenarios.pipelines import run_pipeline
from noncolliding.status_messages import ErrorMessage

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _fail(code: str, error: Exception, status: int) -> int:
    record = ErrorMessage.from_code(code)
    record.detail = str(error)
    print(record.model_dump_json(), file=sys.stderr)
    return status


def load_config(path: Path) -> ScenarioConfig:
    return ScenarioConfig.model_validate_json(path.read_text())


def run_scenario(config: ScenarioConfig) -> int:
    """
    Run one scenario and write its artifacts.

    Args:
        config: Validated scenario configuration.

    Returns:
        Exit status.
    """
    start = time.perf_counter()
    try:
        output = run_pipeline(config.scenario, config.parameters, config.seed)
    except (ValidationError, ValidationFailure) as error:
        return _fail("invalid-scenario", error, EXIT_VALIDATION)
    except NumericalFailure as error:
        return _fail("numerical-failure", error, EXIT_NUMERICAL)
    wall_time = time.perf_counter() - start

    manifest = write_outputs(
        config.output_dir, output, config.model_dump(mode="json"), __version__, wall_time
    )
    logger.info(f"Scenario {config.scenario} finished in {wall_time:.2f}s, manifest at {manifest}.")
    for check in output.checks:
        if not check.passed:
            logger.warning(f"Check failed: criterion {check.criterion}, {check.name} ({check.value:.3e}).")
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    try:
        config = load_config(Path(args.config))
    except OSError as error:
        return _fail("invalid-scenario", error, EXIT_VALIDATION)
    except ValidationError as error:
        return _fail("invalid-scenario", error, EXIT_VALIDATION)
    return run_scenario(config)


def _report(args: argparse.Namespace) -> int:
    artifact_dir = Path(args.dir)
    try:
        report = emit_report(artifact_dir, __version__)
    except ManifestError as error:
        return _fail("missing-manifest", error, EXIT_VALIDATION)
    text = report_text(report)
    output = Path(args.output) if args.output else artifact_dir / REPORT_NAME
    output.write_text(text)
    print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noncolliding", description="Noncolliding Bernoulli random walk scenarios.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run a scenario described by a JSON configuration.")
    run.add_argument("config", help="Path of the JSON configuration.")
    run.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default WARNING).",
    )
    run.set_defaults(handler=_run)

    report = commands.add_parser("report", help="Summarize the artifacts of a run.")
    report.add_argument("dir", help="Artifact directory holding a manifest.")
    report.add_argument("--output", default=None, help=f"Report path (default DIR/{REPORT_NAME}).")
    report.set_defaults(handler=_report, log_level="WARNING")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    return int(args.handler(args))


if __name__ == "__main__":
    sys.exit(main())
