"""
Run Artifacts
Per-run trajectory CSV and JSON summary, written and read back
"""

import csv
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import ValidationError
from slugify import slugify

from app.core.exceptions import ArtifactIOException
from app.schemas.run import RunRecord, TrajectoryPoint
from app.utils.csv_schema import (
    RUNS_DIR,
    SUMMARY_SUFFIX,
    TRAJECTORY_COLUMNS,
    TRAJECTORY_SUFFIX,
)
from app.utils.logging import get_logger

logger = get_logger(__name__)


def run_file_stem(run_id: str) -> str:
    return slugify(run_id, lowercase=False)


def runs_directory(root: Union[str, Path]) -> Path:
    """Where run files live below an experiment directory"""
    root = Path(root)
    nested = root / RUNS_DIR
    return nested if nested.is_dir() else root


def write_run(record: RunRecord, directory: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write one run

    Args:
        record: Run to persist
        directory: Target directory (created if missing)

    Returns:
        (trajectory CSV path, JSON summary path)

    Raises:
        ArtifactIOException: On any I/O failure
    """
    target = Path(directory)
    stem = run_file_stem(record.run_id)
    csv_path = target / f"{stem}{TRAJECTORY_SUFFIX}"
    json_path = target / f"{stem}{SUMMARY_SUFFIX}"
    try:
        target.mkdir(parents=True, exist_ok=True)
        with csv_path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=TRAJECTORY_COLUMNS)
            writer.writeheader()
            for point in record.trajectory:
                writer.writerow({
                    "run_id": record.run_id,
                    "algo": record.algo,
                    "problem": record.problem,
                    "seed": record.seed,
                    "evaluations": point.evaluations,
                    "best_error": point.best_error,
                })
        json_path.write_text(
            record.model_dump_json(indent=2, exclude={"trajectory"}), encoding="utf-8"
        )
    except OSError as e:
        logger.error(f"Error writing artifacts for {record.run_id}: {str(e)}")
        raise ArtifactIOException(f"Failed to write run {record.run_id}: {str(e)}")
    return csv_path, json_path


def read_trajectory(path: Union[str, Path]) -> List[TrajectoryPoint]:
    source = Path(path)
    try:
        with source.open(newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames != TRAJECTORY_COLUMNS:
                raise ArtifactIOException(f"Unexpected columns in {source}: {reader.fieldnames}")
            return [
                TrajectoryPoint(evaluations=int(row["evaluations"]), best_error=float(row["best_error"]))
                for row in reader
            ]
    except OSError as e:
        raise ArtifactIOException(f"Failed to read trajectory {source}: {str(e)}")


def read_run(json_path: Union[str, Path]) -> RunRecord:
    """Load a JSON summary and its sibling trajectory CSV"""
    source = Path(json_path)
    try:
        record = RunRecord.model_validate_json(source.read_text(encoding="utf-8"))
    except OSError as e:
        raise ArtifactIOException(f"Failed to read run summary {source}: {str(e)}")
    except ValidationError as e:
        raise ArtifactIOException(f"Malformed run summary {source}: {str(e)}")
    trajectory_path = source.with_suffix(TRAJECTORY_SUFFIX)
    if trajectory_path.is_file():
        record.trajectory = read_trajectory(trajectory_path)
    return record


def load_runs(directory: Union[str, Path]) -> List[RunRecord]:
    """All runs below an experiment directory, in file-name order"""
    folder = runs_directory(directory)
    if not folder.is_dir():
        return []
    return [read_run(path) for path in sorted(folder.glob(f"*{SUMMARY_SUFFIX}"))]
