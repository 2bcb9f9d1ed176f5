"""CSV and JSON report writers.

Both formats start with the schema version and the full config. Column and
key order is fixed; new fields are only ever appended with a version bump.
"""
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, TextIO

import pandas as pd

from .experiment import ExperimentConfig, ExperimentResult
from .sweep import SUMMARY_COLUMNS, SweepSummary, summarize_result

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "noisy-select-report/1"
TRIAL_COLUMNS = ["trial", "element_id", "true_rank", "success", "comparisons", "queries", "micros"]


def _header_value(value: Any) -> str:
    return "null" if value is None else str(value)


def write_header(stream: TextIO, config: ExperimentConfig, extra: Optional[Dict[str, Any]] = None) -> None:
    stream.write(f"# schema: {SCHEMA_VERSION}\n")
    for key, value in config.as_dict().items():
        stream.write(f"# {key}: {_header_value(value)}\n")
    for key, value in (extra or {}).items():
        stream.write(f"# {key}: {_header_value(value)}\n")


def trials_frame(result: ExperimentResult) -> pd.DataFrame:
    return pd.DataFrame([r.as_dict() for r in result.reports], columns=TRIAL_COLUMNS)


def write_trials_csv(result: ExperimentResult, stream: TextIO) -> None:
    write_header(stream, result.config)
    trials_frame(result).to_csv(stream, index=False, lineterminator="\n")


def write_trials_json(result: ExperimentResult, stream: TextIO) -> None:
    summary = summarize_result(result).rows[0]
    document = {
        "schema": SCHEMA_VERSION,
        "config": result.config.as_dict(),
        "trials": [r.as_dict() for r in result.reports],
        "summary": asdict(summary),
    }
    json.dump(document, stream, indent=2)
    stream.write("\n")


def write_summary_csv(summary: SweepSummary, stream: TextIO, grid: Dict[str, Any]) -> None:
    if summary.base is not None:
        write_header(stream, summary.base, grid)
    summary.to_frame().to_csv(stream, index=False, lineterminator="\n")


def write_summary_json(summary: SweepSummary, stream: TextIO, grid: Dict[str, Any]) -> None:
    document = {
        "schema": SCHEMA_VERSION,
        "config": summary.base.as_dict() if summary.base is not None else {},
        "grid": grid,
        "summary": [{name: getattr(row, name) for name in SUMMARY_COLUMNS} for row in summary],
    }
    json.dump(document, stream, indent=2)
    stream.write("\n")


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Yield the output file, or stdout when no path is given."""
    if path is None:
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as f:
        yield f
    logger.info(f"Report written to {target}")


def write_result(result: ExperimentResult) -> None:
    with open_output(result.config.output) as stream:
        if result.config.format == "json":
            write_trials_json(result, stream)
        else:
            write_trials_csv(result, stream)


def write_sweep(summary: SweepSummary, grid: Dict[str, Any]) -> None:
    config = summary.base
    with open_output(config.output) as stream:
        if config.format == "json":
            write_summary_json(summary, stream, grid)
        else:
            write_summary_csv(summary, stream, grid)
