"""Experiment harness: seeded trials, sweeps, the exactness gate and reports."""
from .algorithms import Algorithm, TrialOutcome, is_success, target_k
from .experiment import (ExperimentConfig, ExperimentResult, TrialReport, execute_trial,
                         run_trials, trial_streams)
from .reporting import SCHEMA_VERSION, TRIAL_COLUMNS, write_result, write_sweep
from .statistics import clopper_pearson, lower_bound_reference
from .sweep import SummaryRow, SweepSummary, summarize, summarize_result, sweep
from .verify import VerificationResult, verify_exactness

__all__ = [
    'Algorithm',
    'ExperimentConfig',
    'ExperimentResult',
    'SCHEMA_VERSION',
    'SummaryRow',
    'SweepSummary',
    'TRIAL_COLUMNS',
    'TrialOutcome',
    'TrialReport',
    'VerificationResult',
    'clopper_pearson',
    'execute_trial',
    'is_success',
    'lower_bound_reference',
    'run_trials',
    'summarize',
    'summarize_result',
    'sweep',
    'target_k',
    'trial_streams',
    'verify_exactness',
]
