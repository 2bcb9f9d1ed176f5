"""Exception types shared by the library and the experiment harness."""


class NoisySelectError(Exception):
    """Base class for all errors raised by noisy-select."""


class InvalidParameterError(NoisySelectError, ValueError):
    """A parameter is outside the range an operation accepts."""


class QueryBudgetExceeded(NoisySelectError):
    """A process spent more oracle queries than its safety cap allows."""

    def __init__(self, spent: int, budget: int):
        super().__init__(f"query budget exceeded: spent {spent} > budget {budget}")
        self.spent = spent
        self.budget = budget


class AcceptanceFailure(NoisySelectError):
    """An exactness or acceptance check did not hold."""

    def __init__(self, algorithm: str, n: int, seed: int, detail: str = ""):
        message = f"{algorithm} failed at n={n}, seed={seed}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.algorithm = algorithm
        self.n = n
        self.seed = seed
