"""Knockout tournament for FTMin(3n/4), full and truncated.

The entry pool is N = next power of two >= |S| elements sampled from S with
replacement. Round i pairs survivors in list order (0-1, 2-3, ...) and
decides each match by the majority of

    L_i = 2 * c_p * ceil(alpha^i) + 5

comparisons; an exact split of votes goes to the smaller handle. With the
default alpha = 2 the winner is small with probability >= 1 - 2^-(N+1) and
the total cost is O(N log N). Stopping after round i leaves N / 2^i
survivors, each small independently with probability >= 1 - 2^-(2^i + 1).
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, NoisyComparator, sample_with_replacement
from core.profile import FaultProfile
from core.utils import exact_log2, next_power_of_two, tolerant_ceil

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 2.0
PRESELECTION_ALPHA = 2.0 ** 0.9

# Failure base of the full tournament: it fails with probability <= 2^-n.
FAILURE_BASE = 2.0


@dataclass(frozen=True)
class TournamentParams:
    """Match-length schedule of the knockout tournament."""

    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.alpha < 1:
            raise InvalidParameterError(f"alpha must be >= 1, got {self.alpha}")

    def growth(self, round_i: int) -> int:
        """Repetition growth ceil(alpha^i) of round i.

        Args:
            round_i: round number, counted from 1

        Returns:
            The multiplier of 2*c_p in the round-i match length.
        """
        return tolerant_ceil(self.alpha ** round_i)

    def match_length(self, round_i: int, profile: FaultProfile) -> int:
        """Comparisons per match in round i: 2*c_p*ceil(alpha^i) + 5, profile-scaled."""
        if round_i < 1:
            raise InvalidParameterError(f"rounds are numbered from 1, got {round_i}")
        return profile.repetitions(2 * profile.c_p * self.growth(round_i) + 5)


def preselection_rounds(pool_size: int) -> int:
    """ceil(log2 log2 N), at least 1, for pools of two or more slots."""
    rounds = exact_log2(pool_size)
    if rounds < 1:
        raise InvalidParameterError("a tournament round needs at least two entrants")
    return max(1, tolerant_ceil(math.log2(rounds)))


def build_entry_pool(rng: np.random.Generator,
                     S: Sequence[ElementHandle]) -> List[ElementHandle]:
    """Sample next_power_of_two(|S|) entrants from S with replacement."""
    if not S:
        raise InvalidParameterError("cannot build an entry pool from an empty input")
    return sample_with_replacement(rng, S, next_power_of_two(len(S)))


def _decide(x: ElementHandle, y: ElementHandle, less_votes: int, length: int) -> ElementHandle:
    if 2 * less_votes > length:
        return x
    if 2 * less_votes < length:
        return y
    return min(x, y)


def play_match(cmp: NoisyComparator, x: ElementHandle, y: ElementHandle, round_i: int,
               alpha: float = DEFAULT_ALPHA) -> ElementHandle:
    """Play one round-i match; the majority winner advances."""
    length = TournamentParams(alpha).match_length(round_i, cmp.profile)
    votes = int(cmp.tally_less([x], [y], length)[0])
    return _decide(x, y, votes, length)


def play_round(cmp: NoisyComparator, entrants: Sequence[ElementHandle], round_i: int,
               alpha: float = DEFAULT_ALPHA) -> List[ElementHandle]:
    """Play all matches of round i at once; returns the winners in bracket order."""
    if len(entrants) % 2 != 0:
        raise InvalidParameterError(f"a round needs an even number of entrants, got {len(entrants)}")
    length = TournamentParams(alpha).match_length(round_i, cmp.profile)
    left, right = entrants[0::2], entrants[1::2]
    votes = cmp.tally_less(left, right, length)
    return [_decide(x, y, int(v), length) for x, y, v in zip(left, right, votes)]


def advance(cmp: NoisyComparator, entrants: Sequence[ElementHandle], first_round: int,
            last_round: int, alpha: float = DEFAULT_ALPHA) -> List[ElementHandle]:
    """Play rounds first_round..last_round on a bracket.

    Resuming a truncated bracket from round i + 1 with the same generator is
    identical to having played all rounds in one call.
    """
    survivors = list(entrants)
    for round_i in range(first_round, last_round + 1):
        survivors = play_round(cmp, survivors, round_i, alpha)
        logger.debug(f"round {round_i}: {len(survivors)} survivors")
    return survivors


def run_tournament(cmp: NoisyComparator, S: Sequence[ElementHandle],
                   alpha: float = DEFAULT_ALPHA) -> ElementHandle:
    """Winner of the full knockout tournament over a pool sampled from S."""
    pool = build_entry_pool(cmp.rng, S)
    rounds = exact_log2(len(pool))
    return advance(cmp, pool, 1, rounds, alpha)[0]


def run_truncated_tournament(cmp: NoisyComparator, S: Sequence[ElementHandle], i_max: int,
                             alpha: float = DEFAULT_ALPHA) -> List[ElementHandle]:
    """Survivors after round i_max, N / 2^i_max of them.

    Raises:
        InvalidParameterError: if i_max is outside [1, log2 N].
    """
    if not S:
        raise InvalidParameterError("cannot run a tournament on an empty input")
    rounds = exact_log2(next_power_of_two(len(S)))
    if not 1 <= i_max <= rounds:
        raise InvalidParameterError(f"i_max must be in [1, {rounds}], got {i_max}")
    pool = build_entry_pool(cmp.rng, S)
    return advance(cmp, pool, 1, i_max, alpha)


def tournament_comparisons(pool_size: int, profile: FaultProfile,
                           alpha: float = DEFAULT_ALPHA, i_max: Optional[int] = None) -> int:
    """Closed form sum_{i=1}^{i_max} (N / 2^i) * L_i."""
    rounds = exact_log2(pool_size)
    last = rounds if i_max is None else i_max
    params = TournamentParams(alpha)
    return sum((pool_size >> i) * params.match_length(i, profile) for i in range(1, last + 1))
