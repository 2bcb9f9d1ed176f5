"""Expected-time FTMin: pre-selection, weak oracles and the modified process."""
from .modified_process import ModifiedSchedule, modified_multiphase
from .preselect import PreselectedSet, preselect
from .solver import DENSE_SOLVERS, SolverMode, ftmin, ftmin_fast_dense
from .weak_oracles import WeakOracleParams, WeakOracles, lower_band_size, oracle_o1, oracle_o2

__all__ = [
    'DENSE_SOLVERS',
    'ModifiedSchedule',
    'PreselectedSet',
    'SolverMode',
    'WeakOracleParams',
    'WeakOracles',
    'ftmin',
    'ftmin_fast_dense',
    'lower_band_size',
    'modified_multiphase',
    'oracle_o1',
    'oracle_o2',
    'preselect',
]
