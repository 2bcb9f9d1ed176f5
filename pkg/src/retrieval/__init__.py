"""Retrieval module: FindOne multi-phase process."""
from .multiphase import PhaseSchedule, find_one, find_one_dense, pad_to_power_of_two

__all__ = ['PhaseSchedule', 'find_one', 'find_one_dense', 'pad_to_power_of_two']
