"""Integer and logarithm helpers used by the schedules."""
import math

# Slack for ceilings of floating point powers such as (2 ** 0.9) ** 10.
_CEIL_SLACK = 1e-9


def tolerant_ceil(value: float) -> int:
    """Ceiling that ignores floating point noise just above an integer."""
    return math.ceil(value - _CEIL_SLACK)


def next_power_of_two(value: int) -> int:
    """Smallest power of two that is >= value (1 for value <= 1)."""
    if value <= 1:
        return 1
    return 1 << (int(value) - 1).bit_length()


def is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def exact_log2(value: int) -> int:
    """log2 of a power of two."""
    if not is_power_of_two(value):
        raise ValueError(f"{value} is not a power of two")
    return value.bit_length() - 1


def next_odd(value: int) -> int:
    """Smallest odd integer >= max(value, 1)."""
    value = max(int(value), 1)
    return value if value % 2 == 1 else value + 1


def ceil_log2(value: float) -> int:
    return tolerant_ceil(math.log2(value))


def ceil_ln(value: float) -> int:
    return tolerant_ceil(math.log(value))
