"""Weak relevance oracles O1 and O2 built from noisy comparisons within S'.

O1 samples two elements of S' and reports x relevant unless one of them
compares smaller than x. O2 samples one element and reports x relevant
unless it compares smaller. A sample that is a copy of x never counts as
smaller. Each comparison is boosted to an error of at most 1/200 when the
raw fault rate is higher.

Guarantees, with S-_rho the smallest ceil(rho * |S'|) elements of S':

    O1: RELEVANT w.p. >= 1 - 5/11 on S-_{1/6}, <= 5/11 outside S-_{1/3}
    O2: RELEVANT w.p. >= 1 - 2/5  on S-_{1/3}, <= 2/5  outside S-_{3/4}
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, NoisyComparator, Relevance, handle_arrays
from core.profile import FaultProfile, as_fraction, derive_cp
from core.utils import tolerant_ceil

from .preselect import PreselectedSet


@dataclass(frozen=True)
class WeakOracleParams:
    """Target error rates of O1 and O2 and the raw rate above which comparisons are boosted."""

    p1: Fraction = Fraction(5, 11)
    p2: Fraction = Fraction(2, 5)
    raw_fault_ceiling: Fraction = Fraction(1, 200)

    @property
    def c_p1(self) -> int:
        return derive_cp(self.p1)

    @property
    def c_p2(self) -> int:
        return derive_cp(self.p2)

    def boosting_repetitions(self, profile: FaultProfile) -> int:
        """Comparisons per boosted comparison: 2*c_p*ceil(ln 200) + 1 when p > 1/200."""
        if as_fraction(profile.p) <= self.raw_fault_ceiling:
            return 1
        t = tolerant_ceil(math.log(1 / self.raw_fault_ceiling))
        return profile.repetitions(2 * profile.c_p * t + 1)


def lower_band_size(size: int, rho: float) -> int:
    """|S-_rho| = ceil(rho * |S'|)."""
    return math.ceil(rho * size)


class WeakOracles:
    """O1 and O2 over a fixed S', answering batches of queries for one element."""

    def __init__(self, cmp: NoisyComparator, preselected: Union[PreselectedSet, Sequence[ElementHandle]],
                 params: WeakOracleParams = WeakOracleParams()):
        self.cmp = cmp
        if isinstance(preselected, PreselectedSet):
            self.sources, self.ordinals = preselected.sources, preselected.ordinals
        else:
            if not preselected:
                raise InvalidParameterError("weak oracles need a non-empty S'")
            self.sources, self.ordinals = handle_arrays(preselected)
        self.size = len(self.sources)
        self.boost = params.boosting_repetitions(cmp.profile)
        self.o1_queries = 0
        self.o2_queries = 0

    def _check_member(self, x: ElementHandle) -> None:
        if not np.any((self.sources == x.source_id) & (self.ordinals == x.ordinal)):
            raise InvalidParameterError(f"{x!r} is not in S'")

    def _samples_smaller(self, x: ElementHandle, count: int) -> np.ndarray:
        picks = self.cmp.rng.integers(0, self.size, size=count)
        ssrc, sord = self.sources[picks], self.ordinals[picks]
        xsrc = np.full(count, x.source_id, dtype=np.int64)
        xord = np.full(count, x.ordinal, dtype=np.int64)
        less = self.cmp.tally_less_arrays(ssrc, sord, xsrc, xord, self.boost)
        return (2 * less > self.boost) & (ssrc != x.source_id)

    def o1_votes(self, x: ElementHandle, queries: int) -> int:
        """Number of RELEVANT answers among `queries` O1 queries on x."""
        self._check_member(x)
        smaller = self._samples_smaller(x, 2 * queries).reshape(queries, 2)
        self.o1_queries += queries
        return int(np.count_nonzero(~smaller.any(axis=1)))

    def o2_votes(self, x: ElementHandle, queries: int) -> int:
        """Number of RELEVANT answers among `queries` O2 queries on x."""
        self._check_member(x)
        smaller = self._samples_smaller(x, queries)
        self.o2_queries += queries
        return int(np.count_nonzero(~smaller))


def oracle_o1(cmp: NoisyComparator, S_prime: Sequence[ElementHandle], x: ElementHandle) -> Relevance:
    """One O1 query: two boosted comparisons against samples of S'."""
    votes = WeakOracles(cmp, S_prime).o1_votes(x, 1)
    return Relevance.RELEVANT if votes == 1 else Relevance.NOT_RELEVANT


def oracle_o2(cmp: NoisyComparator, S_prime: Sequence[ElementHandle], x: ElementHandle) -> Relevance:
    """One O2 query: one boosted comparison against a sample of S'."""
    votes = WeakOracles(cmp, S_prime).o2_votes(x, 1)
    return Relevance.RELEVANT if votes == 1 else Relevance.NOT_RELEVANT
