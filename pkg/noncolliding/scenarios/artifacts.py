"""Artifact files of a scenario run: CSV tables, the manifest and the aggregated report."""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from packaging.version import InvalidVersion, Version
from pydantic import BaseModel

from noncolliding.exceptions import ManifestError
from noncolliding.log import logger

MANIFEST_NAME = "manifest.json"
REPORT_NAME = "report.json"
CRITERIA = tuple(range(1, 16))


class Check(BaseModel):
    """
    Outcome of one acceptance check.

    Attributes:
        criterion: Acceptance criterion identifier.
        name: What was checked.
        value: Measured quantity.
        tolerance: Bound the quantity is held to.
        passed: Whether it held.
    """
    criterion: int
    name: str
    value: float
    tolerance: float
    passed: bool


@dataclass
class Table:
    """Rows of one CSV artifact."""
    name: str
    header: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    @property
    def file_name(self) -> str:
        return f"{self.name}.csv"

    def column(self, name: str) -> list[Any]:
        index = self.header.index(name)
        return [row[index] for row in self.rows]


@dataclass
class ScenarioOutput:
    tables: list[Table] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)


def format_value(value: Any) -> str:
    """Plain text of a CSV cell; floats carry 17 significant digits."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def table_text(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def write_outputs(
    output_dir: Path,
    output: ScenarioOutput,
    config: dict[str, Any],
    version: str,
    wall_time: float,
) -> Path:
    """
    Write the tables and the manifest.

    Args:
        output_dir: Artifact directory, created if needed.
        output: Tables and checks of the run.
        config: Scenario configuration echoed into the manifest.
        version: Library version.
        wall_time: Run duration in seconds.

    Returns:
        Path of the manifest.
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    for table in output.tables:
        (output_dir / table.file_name).write_text(table_text(table))
    manifest = {
        "config": config,
        "version": version,
        "wall_time": wall_time,
        "tables": [table.file_name for table in output.tables],
        "checks": [check.model_dump() for check in output.checks],
    }
    path = output_dir / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_manifest(artifact_dir: Path) -> dict[str, Any]:
    path = artifact_dir / MANIFEST_NAME
    if not path.is_file():
        raise ManifestError(f"No {MANIFEST_NAME} in {artifact_dir}.")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as error:
        raise ManifestError(f"Unreadable manifest {path}: {error}") from error


def _check_version(manifest_version: Optional[str], library_version: str) -> None:
    try:
        produced, current = Version(str(manifest_version)), Version(library_version)
    except InvalidVersion:
        logger.warning_once(f"Manifest version {manifest_version!r} is not a valid version.")
        return
    if produced.major > current.major:
        logger.warning_once(f"Artifacts were produced by noncolliding {produced}, newer than {current}.")


def _max_abs_err(path: Path) -> tuple[int, Optional[float]]:
    with path.open(newline="") as handle:
        rows = list(csv.DictReader(handle))
    if not rows or "abs_err" not in rows[0]:
        return len(rows), None
    return len(rows), max(float(row["abs_err"]) for row in rows)


def emit_report(artifact_dir: Path, library_version: str) -> dict[str, Any]:
    """
    Aggregate the artifacts of a run into a report.

    Args:
        artifact_dir: Directory holding a manifest.
        library_version: Version of the running library.

    Returns:
        The report, with one entry per table and the status of every acceptance criterion.
    """
    manifest = read_manifest(artifact_dir)
    _check_version(manifest.get("version"), library_version)

    tables = []
    for name in manifest.get("tables", []):
        path = artifact_dir / name
        if not path.is_file():
            raise ManifestError(f"The manifest lists {name}, which is missing.")
        rows, max_abs_err = _max_abs_err(path)
        tables.append({"table": name, "rows": rows, "max_abs_err": max_abs_err})

    checks = [Check.model_validate(c) for c in manifest.get("checks", [])]
    criteria = []
    for criterion in CRITERIA:
        related = [c for c in checks if c.criterion == criterion]
        status = "not-run" if not related else ("pass" if all(c.passed for c in related) else "fail")
        criteria.append({
            "criterion": criterion,
            "status": status,
            "checks": [c.model_dump() for c in related],
        })
    return {
        "scenario": manifest.get("config", {}).get("scenario"),
        "version": manifest.get("version"),
        "tables": tables,
        "criteria": criteria,
    }


def report_text(report: dict[str, Any]) -> str:
    def clean(value: Any) -> Any:
        if isinstance(value, float) and not math.isfinite(value):
            return str(value)
        if isinstance(value, dict):
            return {k: clean(v) for k, v in value.items()}
        if isinstance(value, list):
            return [clean(v) for v in value]
        return value

    return json.dumps(clean(report), indent=2) + "\n"
