"""Multi-phase process over S' driven by the weak oracles O1 and O2.

Each element of S' first takes a preliminary test of
8 * c_p1 * ceil(ln N) + 1 O1 queries. If it passes, it takes tests
i = 1..eta of 2 * ceil(2^i ln N) * c_p2 + 1 O2 queries each, with
eta = 1 + ceil(log2(N / log2 N)). The first element that passes every test
is returned. N is the size of the input before pre-selection.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from core.errors import InvalidParameterError, QueryBudgetExceeded
from core.oracles import ElementHandle, NoisyComparator
from core.profile import FaultProfile
from core.utils import ceil_ln, tolerant_ceil

from .preselect import PreselectedSet
from .weak_oracles import WeakOracleParams, WeakOracles

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModifiedSchedule:
    """Query counts of the modified process for an input of size N."""

    N: int
    profile: FaultProfile
    params: WeakOracleParams = field(default_factory=WeakOracleParams)

    def __post_init__(self):
        if self.N < 2:
            raise InvalidParameterError(f"the modified schedule needs N >= 2, got {self.N}")

    @property
    def ln_n(self) -> int:
        return ceil_ln(self.N)

    @property
    def preliminary(self) -> int:
        """O1 queries in the preliminary test, 8*c_p1*ceil(ln N) + 1."""
        return self.profile.repetitions(8 * self.params.c_p1 * self.ln_n + 1)

    @property
    def eta(self) -> int:
        """Number of O2 phases after the preliminary test.

        Returns:
            1 + ceil(log2(N / log2 N)).
        """
        return 1 + tolerant_ceil(math.log2(self.N / math.log2(self.N)))

    def test_length(self, phase: int) -> int:
        if not 1 <= phase <= self.eta:
            raise InvalidParameterError(f"phase must be in [1, {self.eta}], got {phase}")
        doubled = tolerant_ceil(2 ** phase * math.log(self.N))
        return self.profile.repetitions(2 * doubled * self.params.c_p2 + 1)

    @property
    def full_pass(self) -> int:
        return sum(self.test_length(i) for i in range(1, self.eta + 1))

    def expected_queries(self, size: int) -> int:
        """Bound on expected O1 + O2 queries for |S'| = size.

        Every element takes the preliminary test, elements that can pass it
        spend about 32 * ceil(ln N) * c_p2 queries in expectation, and the
        returned element takes one full pass.
        """
        per_element = self.profile.scaled_budget(32 * self.ln_n * self.params.c_p2)
        return size * (self.preliminary + per_element) + self.full_pass


def modified_multiphase(cmp: NoisyComparator, preselected: PreselectedSet,
                        budget: Optional[int] = None) -> ElementHandle:
    """Return an element of the smallest 3/4 of S' with probability >= 1 - 2^-(N/5).

    Args:
        cmp: comparison oracle
        preselected: output of `preselect`
        budget: optional cap on O1 + O2 queries, checked before each test

    Raises:
        QueryBudgetExceeded: when `budget` is exceeded.
    """
    schedule = ModifiedSchedule(preselected.parent_size, cmp.profile)
    oracles = WeakOracles(cmp, preselected, schedule.params)

    def spent() -> int:
        return oracles.o1_queries + oracles.o2_queries

    def check_budget() -> None:
        if budget is not None and spent() > budget:
            raise QueryBudgetExceeded(spent(), budget)

    for x in preselected.survivors:
        check_budget()
        preliminary = schedule.preliminary
        if 2 * oracles.o1_votes(x, preliminary) <= preliminary:
            continue
        for phase in range(1, schedule.eta + 1):
            check_budget()
            length = schedule.test_length(phase)
            if 2 * oracles.o2_votes(x, length) <= length:
                break
        else:
            logger.debug(f"{x!r} passed all {schedule.eta} phases after {spent()} weak queries")
            return x

    logger.info("no element of S' passed every test; returning its first element")
    return preselected.survivors[0]
