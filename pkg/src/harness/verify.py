"""Exactness gate: every algorithm must be exactly right when nothing fails."""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from core.errors import AcceptanceFailure, InvalidParameterError
from core.profile import ConstantsProfile

from .algorithms import Algorithm, exactness_error
from .experiment import ExperimentConfig, execute_trial

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (8, 64, 256)
DEFAULT_SEEDS = 100


@dataclass
class VerificationResult:
    passed: bool
    checked: int
    failure: Optional[AcceptanceFailure] = None

    def raise_for_failure(self) -> None:
        if self.failure is not None:
            raise self.failure


def reduction_k(n: int) -> int:
    """k used for the algorithms that take one: a quarter of the input."""
    return max(1, n // 4)


def verify_exactness(sizes: Sequence[int] = DEFAULT_SIZES, seeds: int = DEFAULT_SEEDS,
                     p: float = 0.0,
                     algorithms: Sequence[Algorithm] = tuple(Algorithm),
                     profile: ConstantsProfile = ConstantsProfile.PRACTICAL,
                     gamma: Optional[float] = None,
                     rep_scale: Optional[float] = None) -> VerificationResult:
    """Run every algorithm at p = 0 for each size and seed; stop at the first miss.

    Raises:
        InvalidParameterError: if p is not 0, before anything runs.
    """
    if p != 0:
        raise InvalidParameterError(f"the exactness gate runs at p = 0, got p = {p}")
    if seeds < 1 or not sizes:
        raise InvalidParameterError("the exactness gate needs at least one size and one seed")

    checked = 0
    for algorithm in map(Algorithm, algorithms):
        for n in sizes:
            for seed in range(seeds):
                k = None if algorithm is Algorithm.FINDMIN or algorithm.dense else reduction_k(n)
                config = ExperimentConfig(algorithm, n, k=k, p=0.0, trials=1, seed=seed,
                                          profile=profile, gamma=gamma, rep_scale=rep_scale)
                config.validate()
                record = execute_trial(config, 0)
                checked += 1
                detail = exactness_error(algorithm, config.settings, record.truth,
                                         record.elements, record.outcome)
                if detail is not None:
                    failure = AcceptanceFailure(algorithm.value, n, seed, detail)
                    logger.error(str(failure))
                    return VerificationResult(False, checked, failure)
        logger.info(f"{algorithm.value}: exact on sizes {list(sizes)} x {seeds} seeds")
    return VerificationResult(True, checked)
