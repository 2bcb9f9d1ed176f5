"""Confidence intervals and reference curves for trial summaries."""
import math
from typing import Tuple

from scipy.stats import beta

from core.errors import InvalidParameterError


def clopper_pearson(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Exact two-sided binomial confidence interval for a success rate."""
    if trials < 1 or not 0 <= successes <= trials:
        raise InvalidParameterError(f"need 0 <= successes <= trials, trials >= 1; "
                                    f"got {successes}/{trials}")
    tail = (1 - confidence) / 2
    low = 0.0 if successes == 0 else float(beta.ppf(tail, successes, trials - successes + 1))
    high = 1.0 if successes == trials else float(beta.ppf(1 - tail, successes + 1, trials - successes))
    return low, high


def lower_bound_reference(n: int, k: int) -> float:
    """(n/k) * log2 n, the shape of the comparison lower bound for FTMin(k)."""
    return n / k * math.log2(n)


def binomial_sigma(rate: float, trials: int) -> float:
    """Standard deviation of an observed rate over `trials` Bernoulli trials."""
    return math.sqrt(rate * (1 - rate) / trials)
