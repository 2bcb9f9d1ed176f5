"""Per-cell summaries and grid sweeps over (n, k, p)."""
import itertools
import logging
from dataclasses import asdict, dataclass, fields
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from core.errors import InvalidParameterError
from performance import PerformanceMonitor

from .experiment import ExperimentConfig, ExperimentResult, TrialReport, run_trials
from .statistics import clopper_pearson, lower_bound_reference

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    n: int
    k: int
    p: float
    trials: int
    successes: int
    success_rate: float
    ci_low: float
    ci_high: float
    mean_comparisons: float
    max_comparisons: int
    mean_queries: float
    max_queries: int
    reference: float
    cost_ratio: float


SUMMARY_COLUMNS = [f.name for f in fields(SummaryRow)]


def summarize(config: ExperimentConfig, reports: Sequence[TrialReport],
              confidence: float = 0.95) -> SummaryRow:
    """Success rate with its Clopper-Pearson interval and cost statistics."""
    if not reports:
        raise InvalidParameterError("cannot summarize zero trials")
    successes = sum(r.success for r in reports)
    low, high = clopper_pearson(successes, len(reports), confidence)
    comparisons = np.array([r.comparisons for r in reports], dtype=np.int64)
    queries = np.array([r.queries for r in reports], dtype=np.int64)
    k = config.target_k
    reference = lower_bound_reference(config.n, k)
    return SummaryRow(
        algorithm=config.algorithm.value,
        n=config.n,
        k=k,
        p=config.p,
        trials=len(reports),
        successes=successes,
        success_rate=successes / len(reports),
        ci_low=low,
        ci_high=high,
        mean_comparisons=float(comparisons.mean()),
        max_comparisons=int(comparisons.max()),
        mean_queries=float(queries.mean()),
        max_queries=int(queries.max()),
        reference=reference,
        cost_ratio=float((comparisons + queries).mean()) / reference,
    )


class SweepSummary:
    """Summary table, one row per (n, k, p) cell in grid order."""

    def __init__(self, rows: Iterable[SummaryRow], base: Optional[ExperimentConfig] = None):
        self.rows: List[SummaryRow] = list(rows)
        self.base = base

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(row) for row in self.rows], columns=SUMMARY_COLUMNS)

    def consecutive_ratios(self, column: str = "mean_comparisons") -> List[float]:
        """row[i] / row[i + 1] for a numeric column."""
        values = [getattr(row, column) for row in self.rows]
        return [a / b for a, b in zip(values, values[1:])]


def summarize_result(result: ExperimentResult) -> SweepSummary:
    return SweepSummary([summarize(result.config, result.reports)], result.config)


def grid(base: ExperimentConfig, ns: Sequence[int], ks: Optional[Sequence[Optional[int]]],
         ps: Sequence[float]) -> List[ExperimentConfig]:
    """Configs for every (n, k, p) cell, validated up front.

    `ks=None` keeps the base k in every cell.

    Raises:
        InvalidParameterError: on an empty grid or any invalid cell.
    """
    ks = [base.k] if ks is None else list(ks)
    if not ns or not ks or not ps:
        raise InvalidParameterError("sweep grid is empty")
    cells = [base.with_cell(n, k, p) for n, k, p in itertools.product(ns, ks, ps)]
    for cell in cells:
        cell.validate()
    return cells


def sweep(base: ExperimentConfig, ns: Sequence[int], ks: Optional[Sequence[Optional[int]]],
          ps: Sequence[float], monitor: Optional[PerformanceMonitor] = None) -> SweepSummary:
    """run_trials on every cell of the grid; nothing runs if any cell is invalid."""
    cells = grid(base, ns, ks, ps)
    logger.info(f"Sweeping {len(cells)} cells of {base.algorithm.value}")
    rows = []
    for cell in cells:
        result = run_trials(cell, monitor)
        rows.append(summarize(cell, result.reports))
    return SweepSummary(rows, base)
