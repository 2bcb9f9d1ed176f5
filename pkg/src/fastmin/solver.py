"""FTMin solvers: the fast dense solver and FTMin(k) through the reduction."""
import logging
import math
from enum import Enum
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.errors import QueryBudgetExceeded
from core.oracles import ElementHandle, NoisyComparator
from core.utils import next_power_of_two
from selection.findmin import FindMinParams, find_min
from selection.reduction import ReductionParams, reduce_ftmin
from selection.tournament import FAILURE_BASE as TOURNAMENT_FAILURE_BASE
from selection.tournament import run_tournament

from .modified_process import ModifiedSchedule, modified_multiphase
from .preselect import preselect

logger = logging.getLogger(__name__)

DEFAULT_SAFETY_FACTOR = 10.0
# The fast dense solver fails with probability < 2^-(n/21).
FAST_FAILURE_BASE = 2.0 ** (1 / 21)
MIN_FAST_POOL = 4


class SolverMode(str, Enum):
    """Dense solver plugged into the reduction."""

    WORST_CASE = "worst-case"
    EXPECTED = "expected"
    FINDMIN = "findmin"


def ftmin_fast_dense(cmp: NoisyComparator, S: Sequence[ElementHandle],
                     safety_factor: Optional[float] = DEFAULT_SAFETY_FACTOR) -> ElementHandle:
    """Solve FTMin(3n/4) in O(n log log n) expected comparisons.

    Pre-selection followed by the modified multi-phase process. When the
    process spends more than `safety_factor` times its expected query count
    the knockout tournament on S answers instead; None disables the cap.
    """
    if next_power_of_two(len(S)) < MIN_FAST_POOL:
        return run_tournament(cmp, S)
    pre = preselect(cmp, S)
    budget = None
    if safety_factor is not None:
        schedule = ModifiedSchedule(pre.parent_size, cmp.profile)
        budget = math.ceil(safety_factor * schedule.expected_queries(len(pre)))
    try:
        return modified_multiphase(cmp, pre, budget)
    except QueryBudgetExceeded as e:
        logger.warning(f"{e}; falling back to the knockout tournament")
        return run_tournament(cmp, S)


def _findmin_core(cmp: NoisyComparator, candidates: List[ElementHandle]) -> ElementHandle:
    return find_min(cmp, candidates, FindMinParams.exponentially_small(len(candidates)))


DENSE_SOLVERS: Dict[SolverMode, Tuple[Callable, float]] = {
    SolverMode.WORST_CASE: (run_tournament, TOURNAMENT_FAILURE_BASE),
    SolverMode.EXPECTED: (ftmin_fast_dense, FAST_FAILURE_BASE),
    # FindMin with q = 2^-|S*| fails with probability <= 2^-n as well
    SolverMode.FINDMIN: (_findmin_core, 2.0),
}


def ftmin(cmp: NoisyComparator, S: Sequence[ElementHandle], k: int,
          mode: SolverMode = SolverMode.WORST_CASE,
          params: Optional[ReductionParams] = None,
          safety_factor: Optional[float] = DEFAULT_SAFETY_FACTOR) -> ElementHandle:
    """Return one of the k smallest elements of S with high probability.

    WORST_CASE uses the knockout tournament as the dense solver,
    O((n/k) log n + log n log log n) comparisons; EXPECTED uses the fast
    dense solver for O((n/k) log n + log n log log log n) expected
    comparisons; FINDMIN uses FindMin with q = 2^-|S*|.
    """
    mode = SolverMode(mode)
    core, core_base = DENSE_SOLVERS[mode]
    if mode is SolverMode.EXPECTED:
        core = partial(ftmin_fast_dense, safety_factor=safety_factor)
    if params is None:
        params = ReductionParams.for_ftmin(len(S), k, cmp.profile, core_base)
    return reduce_ftmin(cmp, S, k, params, core)
