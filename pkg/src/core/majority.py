"""Majority-vote boosting of noisy comparisons and queries.

Repeating a comparison 2*c_p*t + 1 times and taking the strict majority
is wrong with probability at most e^-t.
"""
import math

from scipy.stats import binom

from .errors import InvalidParameterError
from .oracles import ElementHandle, NoisyComparator, NoisyRelevanceOracle, Order, Relevance
from .profile import Probability


def majority_repetitions(c_p: int, t: int) -> int:
    """Number of calls behind one boosted answer.

    Args:
        c_p: fault constant of the profile, see `derive_cp`
        t: boosting parameter, at least 1

    Returns:
        2*c_p*t + 1, always odd so a strict majority exists.

    Raises:
        InvalidParameterError: if t < 1.
    """
    if t < 1:
        raise InvalidParameterError(f"boosting parameter t must be >= 1, got {t}")
    return 2 * c_p * t + 1


def majority_compare(cmp: NoisyComparator, x: ElementHandle, y: ElementHandle,
                     t: int) -> Order:
    """Strict-majority order of x and y over 2*c_p*t + 1 comparisons."""
    reps = cmp.profile.repetitions(majority_repetitions(cmp.profile.c_p, t))
    less = int(cmp.tally_less([x], [y], reps)[0])
    return Order.LESS if 2 * less > reps else Order.GREATER


def majority_query(oracle: NoisyRelevanceOracle, x: ElementHandle,
                   repetitions: int) -> Relevance:
    """Strict-majority relevance of x over exactly `repetitions` queries."""
    if repetitions < 1 or repetitions % 2 == 0:
        raise InvalidParameterError(f"repetitions must be odd and positive, got {repetitions}")
    hits = oracle.tally_relevant(x, repetitions)
    return Relevance.RELEVANT if 2 * hits > repetitions else Relevance.NOT_RELEVANT


def majority_error_probability(p: Probability, repetitions: int) -> float:
    """Exact probability that a strict majority of `repetitions` answers is wrong."""
    if repetitions < 1 or repetitions % 2 == 0:
        raise InvalidParameterError(f"repetitions must be odd and positive, got {repetitions}")
    # wrong iff at least (repetitions + 1) / 2 faults
    return float(binom.sf(repetitions // 2, repetitions, float(p)))


def majority_bound(t: int) -> float:
    """Upper bound e^-t on the majority error for 2*c_p*t + 1 repetitions."""
    return math.exp(-t)
