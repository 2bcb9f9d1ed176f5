"""Element handles, the hidden ground truth and the two fault-injecting oracles.

Algorithms only ever hold handles and oracles. The ground truth stays
private to the oracles and to the harness that scores results.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError
from .profile import FaultProfile

logger = logging.getLogger(__name__)


class Order(Enum):
    LESS = "less"
    GREATER = "greater"


class Relevance(Enum):
    RELEVANT = "relevant"
    NOT_RELEVANT = "not-relevant"


@dataclass(frozen=True, order=True)
class ElementHandle:
    """Opaque reference to an input element.

    Copies produced by sampling with replacement share `source_id` and get
    distinct `ordinal`s; the dataclass ordering (source_id, ordinal) is the
    consistent tie order between copies.
    """

    source_id: int
    ordinal: int = 0

    def __repr__(self) -> str:
        return f"e{self.source_id}.{self.ordinal}"


def handle_arrays(handles: Sequence[ElementHandle]) -> Tuple[np.ndarray, np.ndarray]:
    """Split handles into parallel arrays.

    Args:
        handles: handles to split

    Returns:
        (source ids, ordinals) as int64 arrays of len(handles).
    """
    count = len(handles)
    sources = np.fromiter((h.source_id for h in handles), dtype=np.int64, count=count)
    ordinals = np.fromiter((h.ordinal for h in handles), dtype=np.int64, count=count)
    return sources, ordinals


def to_handles(sources: np.ndarray, ordinals: np.ndarray) -> List[ElementHandle]:
    """Inverse of `handle_arrays`."""
    return [ElementHandle(int(s), int(o)) for s, o in zip(sources, ordinals)]


class GroundTruth:
    """Hidden total order over n elements plus the small/large threshold k."""

    def __init__(self, rank_of: Sequence[int], k: int):
        ranks = np.asarray(rank_of, dtype=np.int64)
        n = len(ranks)
        if n < 2:
            raise InvalidParameterError(f"an instance needs at least 2 elements, got {n}")
        if not np.array_equal(np.sort(ranks), np.arange(n)):
            raise InvalidParameterError("rank_of must be a permutation of range(n)")
        if not 1 <= k <= n - 1:
            raise InvalidParameterError(f"k must be in [1, {n - 1}], got {k}")
        self._ranks = ranks
        self._ranks.setflags(write=False)
        self.n = n
        self.k = k

    @classmethod
    def random(cls, n: int, k: int, rng: np.random.Generator) -> "GroundTruth":
        """Uniformly random permutation of ranks."""
        if n < 2:
            raise InvalidParameterError(f"an instance needs at least 2 elements, got {n}")
        return cls(rng.permutation(n), k)

    @property
    def ranks(self) -> np.ndarray:
        return self._ranks

    def elements(self) -> List[ElementHandle]:
        return [ElementHandle(i) for i in range(self.n)]

    def check(self, handle: ElementHandle) -> None:
        if not 0 <= handle.source_id < self.n:
            raise InvalidParameterError(f"handle {handle!r} is outside [0, {self.n})")

    def rank(self, handle: ElementHandle) -> int:
        """0-based rank of the handle's source; copies share it."""
        self.check(handle)
        return int(self._ranks[handle.source_id])

    def is_small(self, handle: ElementHandle) -> bool:
        return self.rank(handle) < self.k

    def small_ids(self) -> FrozenSet[int]:
        return frozenset(int(i) for i in np.flatnonzero(self._ranks < self.k))


class NoisyComparator:
    """Comparison oracle that reports the wrong order with probability p.

    `comparisons_used` counts elementary comparisons. `tally_less` simulates
    a batch of independent comparisons with one binomial draw per distinct
    source pair and charges the counter for every simulated call. Copies of
    the same source are ordered by (source_id, ordinal) and never consume
    randomness.
    """

    def __init__(self, truth: GroundTruth, profile: FaultProfile, rng: np.random.Generator):
        self._truth = truth
        self.profile = profile
        self.rng = rng
        self.comparisons_used = 0

    @property
    def p(self) -> float:
        return self.profile.probability

    def check(self, handles: Iterable[ElementHandle]) -> None:
        """Raise InvalidParameterError on a handle outside the instance."""
        for handle in handles:
            self._truth.check(handle)

    def compare(self, x: ElementHandle, y: ElementHandle) -> Order:
        """One noisy comparison; wrong with probability p."""
        less = self.tally_less([x], [y], 1)[0]
        return Order.LESS if less == 1 else Order.GREATER

    def tally_less(self, left: Sequence[ElementHandle], right: Sequence[ElementHandle],
                   times: int) -> np.ndarray:
        """Compare left[j] with right[j] `times` times each.

        Returns:
            Array with the number of LESS reports for each pair.
        """
        if len(left) != len(right):
            raise InvalidParameterError("left and right must have the same length")
        self.check(left)
        self.check(right)
        lsrc, lord = handle_arrays(left)
        rsrc, rord = handle_arrays(right)
        return self.tally_less_arrays(lsrc, lord, rsrc, rord, times)

    def tally_less_arrays(self, lsrc: np.ndarray, lord: np.ndarray,
                          rsrc: np.ndarray, rord: np.ndarray, times: int) -> np.ndarray:
        """Array form of `tally_less`; ids are assumed valid."""
        if times < 1:
            raise InvalidParameterError(f"times must be positive, got {times}")
        ranks = self._truth.ranks
        same = lsrc == rsrc
        truly_less = np.where(same, lord < rord, ranks[lsrc] < ranks[rsrc])
        votes = np.where(truly_less, times, 0).astype(np.int64)
        noisy = ~same
        if self.p > 0 and noisy.any():
            flips = self.rng.binomial(times, self.p, size=int(noisy.sum()))
            votes[noisy] = np.where(truly_less[noisy], times - flips, flips)
        self.comparisons_used += times * len(lsrc)
        return votes


class NoisyRelevanceOracle:
    """Yes/no relevance oracle that answers wrongly with probability p."""

    def __init__(self, relevant: Iterable[int], n: int, profile: FaultProfile,
                 rng: np.random.Generator):
        self.relevant: FrozenSet[int] = frozenset(relevant)
        self.n = n
        self.profile = profile
        self.rng = rng
        self.queries_used = 0
        self._mask = np.zeros(n, dtype=bool)
        self._mask[list(self.relevant)] = True

    @classmethod
    def from_truth(cls, truth: GroundTruth, profile: FaultProfile,
                   rng: np.random.Generator) -> "NoisyRelevanceOracle":
        """Oracle whose relevant set is the k smallest elements of `truth`."""
        return cls(truth.small_ids(), truth.n, profile, rng)

    @property
    def p(self) -> float:
        return self.profile.probability

    def check(self, handles: Iterable[ElementHandle]) -> None:
        """Raise InvalidParameterError on a handle outside [0, n)."""
        for handle in handles:
            if not 0 <= handle.source_id < self.n:
                raise InvalidParameterError(f"handle {handle!r} is outside [0, {self.n})")

    def query(self, x: ElementHandle) -> Relevance:
        """One noisy relevance query.

        Args:
            x: handle inside [0, n)

        Returns:
            The true relevance of x, flipped with probability p.
        """
        hits = self.tally_relevant(x, 1)
        return Relevance.RELEVANT if hits == 1 else Relevance.NOT_RELEVANT

    def tally_relevant(self, x: ElementHandle, times: int) -> int:
        """Query x `times` times; returns the number of RELEVANT answers."""
        self.check([x])
        return int(self.tally_relevant_arrays(np.array([x.source_id]), times)[0])

    def tally_relevant_arrays(self, sources: np.ndarray, times: int,
                              shape: Optional[Tuple[int, ...]] = None) -> np.ndarray:
        """Query each source `times` times, optionally `shape` rounds per source.

        Returns RELEVANT counts of shape `(len(sources),) + shape`.
        """
        if times < 1:
            raise InvalidParameterError(f"times must be positive, got {times}")
        shape = shape or ()
        out_shape = (len(sources),) + tuple(shape)
        truly = np.broadcast_to(
            self._mask[sources].reshape((len(sources),) + (1,) * len(shape)), out_shape)
        if self.p > 0:
            flips = self.rng.binomial(times, self.p, size=out_shape)
            answers = np.where(truly, times - flips, flips)
        else:
            answers = np.where(truly, times, 0)
        self.queries_used += times * int(np.prod(out_shape))
        return answers.astype(np.int64)


def sample_arrays(rng: np.random.Generator, sources: np.ndarray, rows: int,
                  count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Draw `rows` independent samples of `count` source ids each.

    Args:
        rng: generator the draws come from
        sources: source ids to draw from
        rows: number of samples
        count: draws per sample

    Returns:
        (source ids, ordinals), both of shape (rows, count). Within a row,
        repeated draws of one source id get ordinals 0, 1, 2, ... in draw order.
    """
    if rows < 0 or count < 0:
        raise InvalidParameterError(f"rows and count must be non-negative, got {rows}, {count}")
    if rows * count and len(sources) == 0:
        raise InvalidParameterError("cannot sample from an empty source")
    if rows * count == 0:
        empty = np.zeros((rows, count), dtype=np.int64)
        return empty, empty.copy()
    drawn = np.asarray(sources, dtype=np.int64)[rng.integers(0, len(sources), size=(rows, count))]
    order = np.argsort(drawn, axis=1, kind="stable")
    grouped = np.take_along_axis(drawn, order, axis=1)
    positions = np.broadcast_to(np.arange(count), (rows, count))
    starts = np.ones((rows, count), dtype=bool)
    starts[:, 1:] = grouped[:, 1:] != grouped[:, :-1]
    run_start = np.maximum.accumulate(np.where(starts, positions, 0), axis=1)
    ordinals = np.empty((rows, count), dtype=np.int64)
    np.put_along_axis(ordinals, order, positions - run_start, axis=1)
    return drawn, ordinals


def sample_with_replacement(rng: np.random.Generator, source: Sequence[ElementHandle],
                            count: int) -> List[ElementHandle]:
    """Draw `count` handles uniformly and independently from `source`.

    Every draw becomes a fresh copy of its source element; repeated draws of
    one source id get ordinals 0, 1, 2, ... in draw order.
    """
    if count < 0:
        raise InvalidParameterError(f"count must be non-negative, got {count}")
    if count == 0:
        return []
    if not source:
        raise InvalidParameterError("cannot sample from an empty source")
    sources, _ = handle_arrays(source)
    drawn, ordinals = sample_arrays(rng, sources, 1, count)
    return to_handles(drawn[0], ordinals[0])
