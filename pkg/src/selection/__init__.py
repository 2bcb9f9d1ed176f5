"""Selection module: FindMin, knockout tournament and the reduction."""
from .findmin import FindMinParams, find_min, find_min_comparisons, find_min_many
from .reduction import (ReductionParams, RelevanceComparator, build_candidate_set_findone,
                        build_candidate_set_ftmin, candidate_set_comparisons, reduce_ftmin)
from .tournament import (TournamentParams, advance, build_entry_pool, play_match, play_round,
                         preselection_rounds, run_tournament, run_truncated_tournament,
                         tournament_comparisons)

__all__ = [
    'FindMinParams',
    'ReductionParams',
    'RelevanceComparator',
    'TournamentParams',
    'advance',
    'build_candidate_set_findone',
    'build_candidate_set_ftmin',
    'build_entry_pool',
    'candidate_set_comparisons',
    'find_min',
    'find_min_comparisons',
    'find_min_many',
    'play_match',
    'play_round',
    'preselection_rounds',
    'reduce_ftmin',
    'run_tournament',
    'run_truncated_tournament',
    'tournament_comparisons',
]
