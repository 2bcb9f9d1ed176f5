"""Reduction from FTMin(k) / FindOne(k) to their dense versions.

Build m candidates, m the smallest power of two >= gamma * log2 n, each
the FindMin winner of an independent sample of S drawn with replacement,
then hand the candidate set S* to a dense solver. With constant probability
of at least 5/6 each candidate is small (resp. relevant), so S* is a dense
instance with high probability.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import (ElementHandle, NoisyComparator, NoisyRelevanceOracle, handle_arrays,
                          sample_arrays, to_handles)
from core.profile import FaultProfile
from core.utils import next_power_of_two, tolerant_ceil

from .findmin import find_min_comparisons, find_min_many

logger = logging.getLogger(__name__)

FTMIN_INNER_Q = 1 / 10
FINDONE_INNER_Q = 1 / 15
# A simulated comparison is wrong only if one of its two majority votes is,
# each with probability <= e^-3.
SIMULATED_COMPARISON_FAULT = 2 * math.exp(-3)

DenseSolver = Callable[[NoisyComparator, List[ElementHandle]], ElementHandle]


@dataclass(frozen=True)
class ReductionParams:
    """Sizes used to build the candidate set S*."""

    gamma: float
    m: int
    sample_size: int
    q_inner: float

    @staticmethod
    def candidate_count(n: int, gamma: float) -> int:
        """Smallest power of two >= gamma * log2 n."""
        return next_power_of_two(tolerant_ceil(gamma * math.log2(n)))

    @classmethod
    def for_ftmin(cls, n: int, k: int, profile: FaultProfile,
                  core_base: float = 2.0) -> "ReductionParams":
        """Parameters for FTMin(k).

        Args:
            n: instance size, at least 2
            k: target rank in [1, n - 1]
            profile: supplies gamma
            core_base: the dense solver fails with probability <= core_base^-n

        Returns:
            m = next power of two >= gamma log2 n samples of ceil(3n/k) elements, q = 1/10.
        """
        _check_k(n, k)
        gamma = profile.gamma(core_base)
        return cls(gamma, cls.candidate_count(n, gamma), math.ceil(3 * n / k), FTMIN_INNER_Q)

    @classmethod
    def for_findone(cls, n: int, k: int, profile: FaultProfile,
                    core_base: float = 2.0) -> "ReductionParams":
        _check_k(n, k)
        gamma = profile.gamma(core_base)
        return cls(gamma, cls.candidate_count(n, gamma), math.ceil(n / k), FINDONE_INNER_Q)


def _check_k(n: int, k: int) -> None:
    if n < 2:
        raise InvalidParameterError(f"the reduction needs n >= 2, got {n}")
    if not 1 <= k <= n - 1:
        raise InvalidParameterError(f"k must be in [1, {n - 1}], got {k}")


def _sampled_winners(cmp, rng: np.random.Generator, S: Sequence[ElementHandle],
                     params: ReductionParams) -> List[ElementHandle]:
    """FindMin winners of m independent samples of S, all played round by round."""
    sources, _ = handle_arrays(S)
    drawn, ordinals = sample_arrays(rng, sources, params.m, params.sample_size)
    winners, winner_ordinals = find_min_many(cmp, drawn, ordinals, params.q_inner)
    return to_handles(winners, winner_ordinals)


def build_candidate_set_ftmin(cmp: NoisyComparator, S: Sequence[ElementHandle], k: int,
                              params: ReductionParams) -> List[ElementHandle]:
    """S* = FindMin(q = 1/10) winners of m samples of ceil(3n/k) elements each."""
    _check_k(len(S), k)
    cmp.check(S)
    candidates = _sampled_winners(cmp, cmp.rng, S, params)
    logger.debug(f"built {len(candidates)} FTMin candidates from samples of {params.sample_size}")
    return candidates


def candidate_set_comparisons(params: ReductionParams, profile: FaultProfile) -> int:
    """Exact comparison count of build_candidate_set_ftmin."""
    return params.m * find_min_comparisons(params.sample_size, params.q_inner, profile)


def reduce_ftmin(cmp: NoisyComparator, S: Sequence[ElementHandle], k: int,
                 params: ReductionParams, core: DenseSolver) -> ElementHandle:
    """Solve FTMin(k) by running `core` on the candidate set."""
    candidates = build_candidate_set_ftmin(cmp, S, k, params)
    return core(cmp, candidates)


class RelevanceComparator:
    """Comparator-shaped view of a relevance oracle.

    A comparison of x and y takes a majority of 6*c_p + 1 queries on each.
    If the two verdicts differ the relevant-looking element is smaller,
    otherwise the handle order decides. This is the order in which every
    relevant element precedes every non-relevant one, reported wrongly with
    probability at most 2e^-3, so FindMin's schedule uses c_p of that rate.
    """

    def __init__(self, oracle: NoisyRelevanceOracle):
        self.oracle = oracle
        self.rng = oracle.rng
        self.profile = oracle.profile.with_p(SIMULATED_COMPARISON_FAULT)
        self.votes_per_side = oracle.profile.repetitions(6 * oracle.profile.c_p + 1)
        self.comparisons_used = 0

    @property
    def queries_per_comparison(self) -> int:
        return 2 * self.votes_per_side

    def tally_less(self, left: Sequence[ElementHandle], right: Sequence[ElementHandle],
                   times: int) -> np.ndarray:
        """Run `times` simulated comparisons per pair; returns LESS counts."""
        if len(left) != len(right):
            raise InvalidParameterError("left and right must have the same length")
        self.oracle.check(left)
        self.oracle.check(right)
        lsrc, lord = handle_arrays(left)
        rsrc, rord = handle_arrays(right)
        return self.tally_less_arrays(lsrc, lord, rsrc, rord, times)

    def tally_less_arrays(self, lsrc: np.ndarray, lord: np.ndarray,
                          rsrc: np.ndarray, rord: np.ndarray, times: int) -> np.ndarray:
        """Array form of `tally_less`; ids are assumed valid."""
        if len(lsrc) == 0:
            return np.zeros(0, dtype=np.int64)
        r = self.votes_per_side
        x_relevant = 2 * self.oracle.tally_relevant_arrays(lsrc, r, shape=(times,)) > r
        y_relevant = 2 * self.oracle.tally_relevant_arrays(rsrc, r, shape=(times,)) > r
        handle_less = ((lsrc < rsrc) | ((lsrc == rsrc) & (lord < rord)))[:, None]
        less = np.where(x_relevant != y_relevant, x_relevant, handle_less)
        self.comparisons_used += times * len(lsrc)
        return less.sum(axis=1).astype(np.int64)


def build_candidate_set_findone(oracle: NoisyRelevanceOracle, S: Sequence[ElementHandle], k: int,
                                params: ReductionParams) -> List[ElementHandle]:
    """S* = simulated FindMin(q = 1/15) winners of m samples of ceil(n/k) elements."""
    _check_k(len(S), k)
    oracle.check(S)
    simulator = RelevanceComparator(oracle)
    candidates = _sampled_winners(simulator, oracle.rng, S, params)
    logger.debug(f"built {len(candidates)} FindOne candidates "
                 f"({simulator.comparisons_used} simulated comparisons)")
    return candidates
