"""FindOne: the multi-phase testing process and its general-k reduction.

Elements are tested one at a time in input order. In phase i an element
takes a test of 2^(i-1) * 6 * c_p + 1 queries and advances on a strict
majority of RELEVANT answers; a failed test discards it. The first element
through all 1 + log2 n phases is returned. A non-relevant element is
usually dropped within a constant number of phases, which keeps the whole
process at O(n) queries; the hard cap of 61 * c_p * n queries makes that a
worst-case bound.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, NoisyRelevanceOracle, sample_with_replacement
from core.profile import FaultProfile
from core.utils import exact_log2, is_power_of_two, next_power_of_two
from selection.reduction import ReductionParams, build_candidate_set_findone

logger = logging.getLogger(__name__)

CAP_FACTOR = 61


@dataclass(frozen=True)
class PhaseSchedule:
    """Test lengths and query cap for an input of n (a power of two) elements."""

    n: int
    profile: FaultProfile

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise InvalidParameterError(f"the schedule needs a power-of-two size, got {self.n}")

    @property
    def phases(self) -> int:
        """Number of tests an element must pass to be returned.

        Returns:
            1 + log2 n.
        """
        return 1 + exact_log2(self.n)

    def test_length(self, phase: int) -> int:
        """Queries in the phase-th test, 2^(phase-1) * 6*c_p + 1."""
        if not 1 <= phase <= self.phases:
            raise InvalidParameterError(f"phase must be in [1, {self.phases}], got {phase}")
        return self.profile.repetitions(2 ** (phase - 1) * 6 * self.profile.c_p + 1)

    def pass_cost(self, phase: int) -> int:
        """Queries spent by an element that takes tests 1..phase."""
        return sum(self.test_length(j) for j in range(1, phase + 1))

    @property
    def full_pass(self) -> int:
        return self.pass_cost(self.phases)

    @property
    def cap(self) -> int:
        """Query cap; scaled along with the repetition counts."""
        return self.profile.scaled_budget(CAP_FACTOR * self.profile.c_p * self.n)


def pad_to_power_of_two(rng, S: Sequence[ElementHandle]) -> List[ElementHandle]:
    """Append resampled copies until |S| is a power of two."""
    elements = list(S)
    missing = next_power_of_two(len(elements)) - len(elements)
    if missing:
        elements.extend(sample_with_replacement(rng, S, missing))
    return elements


def find_one_dense(oracle: NoisyRelevanceOracle, S: Sequence[ElementHandle]) -> ElementHandle:
    """Return a relevant element of a dense instance with probability >= 1 - 2^-n.

    The cap is checked before each test starts, so a test already under way
    completes; on cap or exhaustion the first element of S is returned.

    Raises:
        InvalidParameterError: on an empty S.
    """
    if not S:
        raise InvalidParameterError("find_one_dense needs a non-empty input")
    elements = pad_to_power_of_two(oracle.rng, S)
    schedule = PhaseSchedule(len(elements), oracle.profile)
    start = oracle.queries_used

    for position, x in enumerate(elements):
        for phase in range(1, schedule.phases + 1):
            spent = oracle.queries_used - start
            if spent > schedule.cap:
                logger.info(f"query cap {schedule.cap} hit after {position} elements; "
                            f"returning fallback")
                return elements[0]
            length = schedule.test_length(phase)
            if 2 * oracle.tally_relevant(x, length) <= length:
                break
        else:
            logger.debug(f"element {x!r} at position {position} passed all "
                         f"{schedule.phases} phases")
            return x

    logger.info("every element failed a test; returning fallback")
    return elements[0]


def find_one(oracle: NoisyRelevanceOracle, S: Sequence[ElementHandle], k: int,
             params: Optional[ReductionParams] = None) -> ElementHandle:
    """FindOne(k) w.h.p.: build the candidate set, then run the dense process on it."""
    if params is None:
        params = ReductionParams.for_findone(len(S), k, oracle.profile)
    candidates = build_candidate_set_findone(oracle, S, k, params)
    return find_one_dense(oracle, candidates)
