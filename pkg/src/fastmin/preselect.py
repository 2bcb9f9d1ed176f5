"""Pre-selection: a knockout tournament stopped after ceil(log2 log2 N) rounds."""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, NoisyComparator, handle_arrays
from selection.tournament import (PRESELECTION_ALPHA, advance, build_entry_pool,
                                  preselection_rounds)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreselectedSet:
    """Survivors S' of the truncated tournament and the pool size N they came from."""

    survivors: List[ElementHandle]
    parent_size: int
    rounds: int
    _arrays: Tuple[np.ndarray, np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.survivors:
            raise InvalidParameterError("a pre-selected set cannot be empty")
        object.__setattr__(self, "_arrays", handle_arrays(self.survivors))

    def __len__(self) -> int:
        return len(self.survivors)

    @property
    def sources(self) -> np.ndarray:
        return self._arrays[0]

    @property
    def ordinals(self) -> np.ndarray:
        return self._arrays[1]


def preselect(cmp: NoisyComparator, S: Sequence[ElementHandle]) -> PreselectedSet:
    """Keep about N / log2 N mostly-small survivors in O(N log log N) comparisons."""
    pool = build_entry_pool(cmp.rng, S)
    if len(pool) < 2:
        return PreselectedSet(pool, len(pool), 0)
    rounds = preselection_rounds(len(pool))
    survivors = advance(cmp, pool, 1, rounds, PRESELECTION_ALPHA)
    logger.debug(f"pre-selection kept {len(survivors)} of {len(pool)} after {rounds} rounds")
    return PreselectedSet(survivors, len(pool), rounds)
