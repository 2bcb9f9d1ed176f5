"""Exact minimum under noisy comparisons with failure probability q.

The algorithm is a single-elimination tournament over S. Entrants are
paired in list order; an odd entrant out gets a bye, which costs nothing.
Round i decides every match by majority over 2*c_p*t_i + 1 comparisons
with

    t_i = i + L,    L = ceil(log2(1/q)).

Failure bound. The true minimum plays at most ceil(log2 |S|) matches, one
per round, and loses round i with probability at most e^-(i+L). By the
union bound the failure probability is at most

    e^-L * sum_{i>=1} e^-i = e^-L / (e - 1) < e^-L <= q^(1/ln 2) < q.

Cost. Round i has at most |S|/2^i matches, so with sum i/2^i = 2 the total
number of comparisons is at most

    |S| * (2*c_p*(L + 2) + 1) <= (6*c_p + 1) * |S| * (1 + log2(1/q)),

i.e. the constant in O(|S| log(1/q)) is C = 6*c_p + 1. The exact count only
depends on (|S|, q, c_p) and is given by `find_min_comparisons`.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import ElementHandle
from core.profile import FaultProfile
from core.utils import ceil_log2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FindMinParams:
    """Per-round boosting schedule t_i = i + ceil(log2(1/q)).

    `offset` is ceil(log2(1/q)); use `exponentially_small` for q = 2^-bits,
    which underflows a float for large bits.
    """

    q: float
    offset: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.offset == 0:
            if not 0 < self.q < 0.5:
                raise InvalidParameterError(f"q must be in (0, 1/2), got {self.q}")
            object.__setattr__(self, "offset", ceil_log2(1 / self.q))
        elif self.offset < 2:
            raise InvalidParameterError(f"offset must be >= 2, got {self.offset}")

    @classmethod
    def exponentially_small(cls, bits: int) -> "FindMinParams":
        """Schedule for q = 2^-bits."""
        return cls(q=2.0 ** -min(bits, 1000), offset=max(bits, 2))

    def t(self, round_i: int) -> int:
        """Boosting parameter i + ceil(log2(1/q)) of round i."""
        return round_i + self.offset

    def match_length(self, round_i: int, profile: FaultProfile) -> int:
        """Comparisons per match in round i.

        Args:
            round_i: round number, counted from 1
            profile: fault profile supplying c_p and the repetition scale

        Returns:
            2*c_p*t_i + 1 after the profile's odd rounding.
        """
        return profile.repetitions(2 * profile.c_p * self.t(round_i) + 1)


def cost_constant(c_p: int) -> int:
    """C such that find_min uses at most C * |S| * (1 + log2(1/q)) comparisons."""
    return 6 * c_p + 1


def find_min(cmp, S: Sequence[ElementHandle],
             q: Union[float, FindMinParams]) -> ElementHandle:
    """Return the minimum of S with probability at least 1 - q.

    Args:
        cmp: comparison oracle (a NoisyComparator or anything exposing
            `profile` and `tally_less`)
        S: non-empty list of handles
        q: failure probability in (0, 1/2), or a prepared FindMinParams

    Raises:
        InvalidParameterError: on an empty S or q outside (0, 1/2).
    """
    if not S:
        raise InvalidParameterError("find_min needs a non-empty input")
    params = q if isinstance(q, FindMinParams) else FindMinParams(q)
    entrants: List[ElementHandle] = list(S)
    round_i = 1
    while len(entrants) > 1:
        reps = params.match_length(round_i, cmp.profile)
        left, right = entrants[0:-1:2], entrants[1::2]
        votes = cmp.tally_less(left, right, reps)
        winners = [x if 2 * v > reps else y for x, y, v in zip(left, right, votes)]
        if len(entrants) % 2 == 1:
            winners.append(entrants[-1])
        entrants = winners
        round_i += 1
    return entrants[0]


def find_min_many(cmp, sources: np.ndarray, ordinals: np.ndarray,
                  q: Union[float, FindMinParams]) -> Tuple[np.ndarray, np.ndarray]:
    """Run find_min on every row of a (rows, size) batch of samples at once.

    Each round plays the matches of all rows in one oracle call, so row r
    gets exactly the bracket find_min would play on that row alone.

    Args:
        cmp: comparison oracle exposing `profile` and `tally_less_arrays`
        sources: source ids, shape (rows, size) with size >= 1
        ordinals: copy ordinals, same shape
        q: failure probability in (0, 1/2), or a prepared FindMinParams

    Returns:
        (source ids, ordinals) of the row winners, each of length rows.
    """
    if sources.ndim != 2 or sources.shape != ordinals.shape:
        raise InvalidParameterError("find_min_many needs two (rows, size) arrays of one shape")
    if sources.shape[1] == 0:
        raise InvalidParameterError("find_min needs a non-empty input")
    params = q if isinstance(q, FindMinParams) else FindMinParams(q)
    src, ords = sources, ordinals
    round_i = 1
    while src.shape[1] > 1:
        width = src.shape[1]
        reps = params.match_length(round_i, cmp.profile)
        lsrc, lord = src[:, 0:width - 1:2], ords[:, 0:width - 1:2]
        rsrc, rord = src[:, 1::2], ords[:, 1::2]
        votes = cmp.tally_less_arrays(lsrc.ravel(), lord.ravel(), rsrc.ravel(), rord.ravel(),
                                      reps).reshape(lsrc.shape)
        left_wins = 2 * votes > reps
        next_src = np.where(left_wins, lsrc, rsrc)
        next_ord = np.where(left_wins, lord, rord)
        if width % 2 == 1:
            next_src = np.concatenate([next_src, src[:, -1:]], axis=1)
            next_ord = np.concatenate([next_ord, ords[:, -1:]], axis=1)
        src, ords = next_src, next_ord
        round_i += 1
    return src[:, 0], ords[:, 0]


def find_min_comparisons(size: int, q: Union[float, FindMinParams],
                         profile: FaultProfile) -> int:
    """Exact number of comparisons find_min performs on `size` elements."""
    if size < 1:
        raise InvalidParameterError("find_min needs a non-empty input")
    params = q if isinstance(q, FindMinParams) else FindMinParams(q)
    total = 0
    remaining = size
    round_i = 1
    while remaining > 1:
        total += (remaining // 2) * params.match_length(round_i, profile)
        remaining = (remaining + 1) // 2
        round_i += 1
    return total
