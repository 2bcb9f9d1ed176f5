"""Fault probability, the boosting constant c_p and the constants profile."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidParameterError
from .utils import next_odd

logger = logging.getLogger(__name__)

Probability = Union[float, Fraction]

FAITHFUL_GAMMA_FLOOR = 600.0
PRACTICAL_GAMMA = 8.0


class ConstantsProfile(str, Enum):
    """Which constants the schedules use.

    PAPER_FAITHFUL keeps every published formula. PRACTICAL allows a smaller
    reduction γ and a global multiplier on repetition counts so statistical
    runs finish at desk scale; the structure of every algorithm is unchanged.
    """

    PAPER_FAITHFUL = "paper-faithful"
    PRACTICAL = "practical"


def as_fraction(p: Probability) -> Fraction:
    if isinstance(p, Fraction):
        return p
    # repr keeps the decimal the caller wrote, so 0.4 becomes exactly 2/5
    return Fraction(repr(float(p)))


def derive_cp(p: Probability) -> int:
    """Repetition multiplier c_p = ceil(4(1-p)/(1-2p)^2).

    With 2*c_p*t + 1 repetitions a strict majority is wrong with
    probability at most e^-t.

    Raises:
        InvalidParameterError: if p is outside [0, 1/2).
    """
    exact = as_fraction(p)
    if not 0 <= exact < Fraction(1, 2):
        raise InvalidParameterError(f"fault probability must be in [0, 1/2), got {p}")
    return math.ceil(4 * (1 - exact) / (1 - 2 * exact) ** 2)


@dataclass(frozen=True)
class FaultProfile:
    """Fault probability p with its derived constant and profile overrides."""

    p: Probability
    profile: ConstantsProfile = ConstantsProfile.PAPER_FAITHFUL
    gamma_override: Optional[float] = None
    repetition_scale: Optional[float] = None
    c_p: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "profile", ConstantsProfile(self.profile))
        object.__setattr__(self, "c_p", derive_cp(self.p))
        if self.profile is ConstantsProfile.PAPER_FAITHFUL and (
                self.gamma_override is not None or self.repetition_scale is not None):
            raise InvalidParameterError(
                "gamma_override and repetition_scale require the practical profile")
        if self.gamma_override is not None and self.gamma_override <= 0:
            raise InvalidParameterError(f"gamma must be positive, got {self.gamma_override}")
        if self.repetition_scale is not None and not 0 < self.repetition_scale <= 1:
            raise InvalidParameterError(
                f"repetition_scale must be in (0, 1], got {self.repetition_scale}")

    @property
    def probability(self) -> float:
        return float(self.p)

    @property
    def scale(self) -> float:
        """Multiplier applied to repetition counts (1.0 when unscaled)."""
        return self.repetition_scale if self.repetition_scale is not None else 1.0

    def repetitions(self, base: int) -> int:
        """Scale a published repetition count.

        Unscaled counts are returned untouched; scaled counts are rounded up
        to the next odd integer >= 1 so majorities never tie.
        """
        if self.repetition_scale is None:
            return base
        return next_odd(math.ceil(base * self.repetition_scale))

    def scaled_budget(self, base: int) -> int:
        """Scale a query budget without the odd-rounding."""
        return max(1, math.ceil(base * self.scale))

    def gamma(self, core_base: float = 2.0) -> float:
        """Reduction γ for a dense solver that fails with probability <= core_base^-n."""
        if self.profile is ConstantsProfile.PRACTICAL:
            return self.gamma_override if self.gamma_override is not None else PRACTICAL_GAMMA
        if core_base <= 1:
            raise InvalidParameterError(f"core failure base must exceed 1, got {core_base}")
        return max(FAITHFUL_GAMMA_FLOOR, 2 / math.log2(core_base))

    def with_p(self, p: Probability) -> "FaultProfile":
        """Same profile and overrides for a different fault probability."""
        return FaultProfile(p, self.profile, self.gamma_override, self.repetition_scale)
