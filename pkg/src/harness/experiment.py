"""Experiment configuration and the seeded trial runner."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from functools import partial
from typing import Any, Dict, List, Optional, Tuple

from numpy.random import Generator, Philox, SeedSequence

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, GroundTruth
from core.profile import ConstantsProfile, FaultProfile
from fastmin import SolverMode
from performance import PerformanceMonitor
from selection.tournament import DEFAULT_ALPHA

from .algorithms import (Algorithm, RunSettings, TrialOutcome, is_success, make_oracle,
                         run_algorithm, target_k, truncation_round)

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class ExperimentConfig:
    """One cell of an experiment: an algorithm, an instance size and a fault rate.

    Every field is echoed verbatim into report headers, in declaration order.
    """

    algorithm: Algorithm
    n: int
    k: Optional[int] = None
    p: float = 0.1
    trials: int = 100
    seed: int = 0
    profile: ConstantsProfile = ConstantsProfile.PRACTICAL
    gamma: Optional[float] = None
    rep_scale: Optional[float] = None
    alpha: float = DEFAULT_ALPHA
    q: float = 0.05
    i_max: Optional[int] = None
    mode: SolverMode = SolverMode.WORST_CASE
    safety_factor: Optional[float] = 10.0
    workers: int = 1
    record_timing: bool = False
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "profile", ConstantsProfile(self.profile))
        object.__setattr__(self, "mode", SolverMode(self.mode))

    def validate(self) -> "ExperimentConfig":
        """Reject invalid combinations before any trial runs.

        Raises:
            InvalidParameterError: naming the offending parameter.
        """
        if self.trials < 1:
            raise InvalidParameterError(f"trials must be at least 1, got {self.trials}")
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.workers < 1:
            raise InvalidParameterError(f"workers must be at least 1, got {self.workers}")
        if self.alpha < 1:
            raise InvalidParameterError(f"alpha must be at least 1, got {self.alpha}")
        if not 0 < self.q < 0.5:
            raise InvalidParameterError(f"q must be in (0, 1/2), got {self.q}")
        if self.safety_factor is not None and self.safety_factor <= 0:
            raise InvalidParameterError(f"safety factor must be positive, got {self.safety_factor}")
        if self.format not in ("csv", "json"):
            raise InvalidParameterError(f"format must be csv or json, got {self.format}")
        target_k(self.algorithm, self.n, self.k)
        self.fault_profile()
        if self.algorithm is Algorithm.TRUNCATED_TOURNAMENT:
            truncation_round(self.settings, self.n)
        return self

    @property
    def target_k(self) -> int:
        return target_k(self.algorithm, self.n, self.k)

    @property
    def settings(self) -> RunSettings:
        return RunSettings(self.target_k, self.q, self.alpha, self.i_max, self.mode,
                           self.safety_factor)

    def fault_profile(self) -> FaultProfile:
        return FaultProfile(self.p, self.profile, self.gamma, self.rep_scale)

    def with_cell(self, n: int, k: Optional[int], p: float) -> "ExperimentConfig":
        return replace(self, n=n, k=k, p=p)

    def as_dict(self) -> Dict[str, Any]:
        """Field name to plain value, in declaration order."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = value.value if isinstance(value, Enum) else value
        return out


@dataclass(frozen=True)
class TrialReport:
    """Result of one trial; `micros` is 0 unless timing is recorded."""

    trial: int
    element_id: int
    true_rank: int
    success: bool
    comparisons: int
    queries: int
    micros: int = 0

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class TrialRecord:
    """A trial with everything needed to check it after the fact."""

    report: TrialReport
    truth: GroundTruth
    elements: List[ElementHandle]
    outcome: TrialOutcome
    elapsed_s: float


def trial_streams(seed: int, trial: int) -> Tuple[Generator, Generator]:
    """Independent instance and oracle generators for (seed, trial)."""
    instance_seq, oracle_seq = SeedSequence(entropy=seed, spawn_key=(trial,)).spawn(2)
    return Generator(Philox(instance_seq)), Generator(Philox(oracle_seq))


def execute_trial(config: ExperimentConfig, trial: int) -> TrialRecord:
    """Build the instance for one trial, run the algorithm and score it."""
    instance_rng, oracle_rng = trial_streams(config.seed, trial)
    truth = GroundTruth.random(config.n, config.target_k, instance_rng)
    elements = truth.elements()
    oracle = make_oracle(config.algorithm, truth, config.fault_profile(), oracle_rng)

    started = time.perf_counter()
    outcome = run_algorithm(config.algorithm, config.settings, oracle, elements)
    elapsed = time.perf_counter() - started

    comparisons = getattr(oracle, "comparisons_used", 0)
    queries = getattr(oracle, "queries_used", 0)
    report = TrialReport(
        trial=trial,
        element_id=outcome.element.source_id,
        true_rank=truth.rank(outcome.element),
        success=is_success(config.algorithm, truth, outcome),
        comparisons=int(comparisons),
        queries=int(queries),
        micros=int(round(elapsed * 1e6)) if config.record_timing else 0,
    )
    return TrialRecord(report, truth, elements, outcome, elapsed)


def _timed_trial(config: ExperimentConfig, trial: int) -> Tuple[TrialReport, float]:
    record = execute_trial(config, trial)
    return record.report, record.elapsed_s


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    reports: List[TrialReport]

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.reports)

    @property
    def success_rate(self) -> float:
        return self.successes / len(self.reports)


def run_trials(config: ExperimentConfig, monitor: Optional[PerformanceMonitor] = None) -> ExperimentResult:
    """Run `config.trials` seeded trials, in a process pool when workers > 1.

    Reports come back in trial order whatever the scheduling.

    Raises:
        InvalidParameterError: before any trial when the config is invalid.
    """
    config.validate()
    logger.info(f"Running {config.trials} trials of {config.algorithm.value} "
                f"(n={config.n}, k={config.target_k}, p={config.p}, seed={config.seed})")
    task = partial(_timed_trial, config)
    trials = range(config.trials)

    if config.workers > 1 and config.trials > 1:
        chunksize = max(1, config.trials // (4 * config.workers))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(task, trials, chunksize=chunksize))
    else:
        results = [task(t) for t in trials]

    reports = []
    for report, elapsed in results:
        reports.append(report)
        if monitor is not None:
            monitor.update(elapsed)

    result = ExperimentResult(config, reports)
    logger.info(f"{config.algorithm.value}: {result.successes}/{len(reports)} successes")
    return result

