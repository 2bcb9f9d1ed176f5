"""Algorithms the harness can run, and how each one is scored.

Runners receive only oracles and element handles; the ground truth stays in
the harness and is consulted after the algorithm returns.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, GroundTruth, NoisyComparator, NoisyRelevanceOracle
from core.utils import exact_log2, next_power_of_two
from fastmin import SolverMode, ftmin, ftmin_fast_dense
from retrieval import find_one, find_one_dense
from selection import (FindMinParams, ReductionParams, advance, build_entry_pool, find_min,
                       preselection_rounds, reduce_ftmin, run_tournament)


class Algorithm(str, Enum):
    FINDMIN = "findmin"
    TOURNAMENT = "tournament"
    TRUNCATED_TOURNAMENT = "truncated-tournament"
    FINDONE_DENSE = "findone-dense"
    FINDONE = "findone"
    REDUCTION_TOURNAMENT = "reduction-tournament"
    REDUCTION_FINDMIN = "reduction-findmin"
    FTMIN_FAST_DENSE = "ftmin-fast-dense"
    FTMIN = "ftmin"

    @property
    def uses_relevance(self) -> bool:
        return self in (Algorithm.FINDONE_DENSE, Algorithm.FINDONE)

    @property
    def dense(self) -> bool:
        """Solves a dense instance, k = ceil(3n/4)."""
        return self in (Algorithm.TOURNAMENT, Algorithm.TRUNCATED_TOURNAMENT,
                        Algorithm.FINDONE_DENSE, Algorithm.FTMIN_FAST_DENSE)


def dense_k(n: int) -> int:
    """k of the dense algorithms, ceil(3n/4) capped at n - 1."""
    return min(n - 1, math.ceil(3 * n / 4))


def target_k(algorithm: Algorithm, n: int, k: Optional[int]) -> int:
    """Threshold the instance is built with.

    FindMin looks for the minimum (k = 1) and the dense algorithms for one of
    the ceil(3n/4) smallest; every other algorithm needs an explicit k.

    Raises:
        InvalidParameterError: if k is missing, out of range, or conflicts
            with the threshold an algorithm fixes.
    """
    algorithm = Algorithm(algorithm)
    if n < 2:
        raise InvalidParameterError(f"n must be at least 2, got {n}")
    if algorithm is Algorithm.FINDMIN:
        fixed = 1
    elif algorithm.dense:
        fixed = dense_k(n)
    else:
        if k is None:
            raise InvalidParameterError(f"{algorithm.value} needs --k")
        if not 1 <= k <= n - 1:
            raise InvalidParameterError(f"k must be in [1, {n - 1}], got {k}")
        return k
    if k is not None and k != fixed:
        raise InvalidParameterError(f"{algorithm.value} runs with k = {fixed}, got k = {k}")
    return fixed


@dataclass
class TrialOutcome:
    """What an algorithm returned, plus the bracket it played when it built one."""

    element: ElementHandle
    survivors: List[ElementHandle] = field(default_factory=list)
    pool: List[ElementHandle] = field(default_factory=list)

    def __post_init__(self):
        if not self.survivors:
            self.survivors = [self.element]


@dataclass(frozen=True)
class RunSettings:
    """Algorithm knobs taken from the experiment config."""

    k: int
    q: float
    alpha: float
    i_max: Optional[int]
    mode: SolverMode
    safety_factor: Optional[float]


Runner = Callable[[RunSettings, object, Sequence[ElementHandle]], TrialOutcome]


def _run_findmin(settings, cmp, S):
    return TrialOutcome(find_min(cmp, S, FindMinParams(settings.q)))


def _run_tournament(settings, cmp, S):
    pool = build_entry_pool(cmp.rng, S)
    winner = advance(cmp, pool, 1, exact_log2(len(pool)), settings.alpha)[0]
    return TrialOutcome(winner, pool=pool)


def truncation_round(settings: RunSettings, n: int) -> int:
    """Last round of the truncated tournament.

    Args:
        settings: run settings; `i_max` None means ceil(log2 log2 N)
        n: instance size, padded to the pool size N

    Returns:
        i_max in [1, log2 N].

    Raises:
        InvalidParameterError: if an explicit i_max is out of range.
    """
    pool_size = next_power_of_two(n)
    i_max = settings.i_max if settings.i_max is not None else preselection_rounds(pool_size)
    if not 1 <= i_max <= exact_log2(pool_size):
        raise InvalidParameterError(f"i_max must be in [1, {exact_log2(pool_size)}], got {i_max}")
    return i_max


def _run_truncated(settings, cmp, S):
    i_max = truncation_round(settings, len(S))
    pool = build_entry_pool(cmp.rng, S)
    survivors = advance(cmp, pool, 1, i_max, settings.alpha)
    return TrialOutcome(survivors[0], survivors=survivors, pool=pool)


def _run_findone_dense(settings, oracle, S):
    return TrialOutcome(find_one_dense(oracle, S))


def _run_findone(settings, oracle, S):
    return TrialOutcome(find_one(oracle, S, settings.k))


def _run_reduction_tournament(settings, cmp, S):
    params = ReductionParams.for_ftmin(len(S), settings.k, cmp.profile)
    core = partial(run_tournament, alpha=settings.alpha)
    return TrialOutcome(reduce_ftmin(cmp, S, settings.k, params, core))


def _run_reduction_findmin(settings, cmp, S):
    return TrialOutcome(ftmin(cmp, S, settings.k, SolverMode.FINDMIN))


def _run_ftmin_fast_dense(settings, cmp, S):
    return TrialOutcome(ftmin_fast_dense(cmp, S, settings.safety_factor))


def _run_ftmin(settings, cmp, S):
    return TrialOutcome(ftmin(cmp, S, settings.k, settings.mode,
                              safety_factor=settings.safety_factor))


RUNNERS: Dict[Algorithm, Runner] = {
    Algorithm.FINDMIN: _run_findmin,
    Algorithm.TOURNAMENT: _run_tournament,
    Algorithm.TRUNCATED_TOURNAMENT: _run_truncated,
    Algorithm.FINDONE_DENSE: _run_findone_dense,
    Algorithm.FINDONE: _run_findone,
    Algorithm.REDUCTION_TOURNAMENT: _run_reduction_tournament,
    Algorithm.REDUCTION_FINDMIN: _run_reduction_findmin,
    Algorithm.FTMIN_FAST_DENSE: _run_ftmin_fast_dense,
    Algorithm.FTMIN: _run_ftmin,
}


def run_algorithm(algorithm: Algorithm, settings: RunSettings,
                  oracle, S: Sequence[ElementHandle]) -> TrialOutcome:
    return RUNNERS[Algorithm(algorithm)](settings, oracle, S)


def is_success(algorithm: Algorithm, truth: GroundTruth, outcome: TrialOutcome) -> bool:
    """Scored from the ground truth only.

    A truncated tournament succeeds when every survivor is small.
    """
    if Algorithm(algorithm) is Algorithm.TRUNCATED_TOURNAMENT:
        return all(truth.is_small(x) for x in outcome.survivors)
    return truth.is_small(outcome.element)


def _bracket_minima(truth: GroundTruth, pool: Sequence[ElementHandle], width: int):
    ranks = np.array([truth.rank(x) for x in pool]).reshape(-1, width)
    winners = ranks.argmin(axis=1) + np.arange(0, len(pool), width)
    return [pool[int(i)] for i in winners]


def exactness_error(algorithm: Algorithm, settings: RunSettings, truth: GroundTruth,
                    S: Sequence[ElementHandle], outcome: TrialOutcome) -> Optional[str]:
    """What an error-free run got wrong, or None.

    Without faults FindMin returns the minimum, a tournament returns the
    minimum of its pool (each truncated bracket the minimum of its slots),
    and the dense retrieval process returns the first relevant input.
    """
    algorithm = Algorithm(algorithm)
    rank = truth.rank(outcome.element)
    if algorithm is Algorithm.FINDMIN:
        return None if rank == 0 else f"returned rank {rank}, expected 0"
    if algorithm is Algorithm.TOURNAMENT:
        best = min(outcome.pool, key=truth.rank)
        return None if outcome.element.source_id == best.source_id else (
            f"returned {outcome.element!r}, pool minimum is {best!r}")
    if algorithm is Algorithm.TRUNCATED_TOURNAMENT:
        width = len(outcome.pool) // len(outcome.survivors)
        expected = _bracket_minima(truth, outcome.pool, width)
        got = [x.source_id for x in outcome.survivors]
        return None if got == [x.source_id for x in expected] else (
            f"survivors {outcome.survivors}, bracket minima {expected}")
    if algorithm is Algorithm.FINDONE_DENSE:
        first = next(x for x in S if truth.is_small(x))
        return None if outcome.element == first else (
            f"returned {outcome.element!r}, first relevant is {first!r}")
    return None if truth.is_small(outcome.element) else f"returned rank {rank} >= k = {truth.k}"


def make_oracle(algorithm: Algorithm, truth: GroundTruth, profile, rng: np.random.Generator):
    if Algorithm(algorithm).uses_relevance:
        return NoisyRelevanceOracle.from_truth(truth, profile, rng)
    return NoisyComparator(truth, profile, rng)
