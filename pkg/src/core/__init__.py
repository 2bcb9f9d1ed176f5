"""Core module: fault model, oracles, boosting and shared services."""

from .config_manager import ConfigManager
from .errors import (AcceptanceFailure, InvalidParameterError, NoisySelectError,
                     QueryBudgetExceeded)
from .logger import setup_logger
from .majority import (majority_bound, majority_compare, majority_error_probability,
                       majority_query, majority_repetitions)
from .oracles import (ElementHandle, GroundTruth, NoisyComparator, NoisyRelevanceOracle,
                      Order, Relevance, sample_arrays, sample_with_replacement, to_handles)
from .profile import ConstantsProfile, FaultProfile, derive_cp

__all__ = [
    'AcceptanceFailure',
    'ConfigManager',
    'ConstantsProfile',
    'ElementHandle',
    'FaultProfile',
    'GroundTruth',
    'InvalidParameterError',
    'NoisyComparator',
    'NoisyRelevanceOracle',
    'NoisySelectError',
    'Order',
    'QueryBudgetExceeded',
    'Relevance',
    'derive_cp',
    'majority_bound',
    'majority_compare',
    'majority_error_probability',
    'majority_query',
    'majority_repetitions',
    'sample_arrays',
    'sample_with_replacement',
    'setup_logger',
    'to_handles',
]
