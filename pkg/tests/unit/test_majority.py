"""Tests for majority boosting and its exact error tail."""
import math

import pytest

from core.errors import InvalidParameterError
from core.majority import (majority_bound, majority_compare, majority_error_probability,
                           majority_query, majority_repetitions)
from core.oracles import ElementHandle, GroundTruth, Order, Relevance
from core.profile import derive_cp


def test_repetitions():
    assert majority_repetitions(6, 3) == 37
    assert majority_repetitions(12, 1) == 25
    with pytest.raises(InvalidParameterError):
        majority_repetitions(6, 0)


@pytest.mark.parametrize("p", [0.05, 0.1, 0.25, 0.4])
@pytest.mark.parametrize("t", range(1, 9))
def test_exact_tail_below_bound(p, t):
    reps = majority_repetitions(derive_cp(p), t)
    assert majority_error_probability(p, reps) <= majority_bound(t)


def test_tail_value_at_known_point():
    assert majority_error_probability(0.1, 37) <= math.exp(-3)
    assert majority_error_probability(0.25, 25) <= math.exp(-1)


def test_tail_approaches_half():
    error = majority_error_probability(0.49, 3)
    assert 0.45 < error < 0.5


def test_tail_rejects_even_repetitions():
    with pytest.raises(InvalidParameterError):
        majority_error_probability(0.1, 4)


def test_majority_compare_fault_free(make_comparator):
    truth = GroundTruth([1, 0, 2], 1)
    cmp = make_comparator(truth, 0.0)
    assert majority_compare(cmp, ElementHandle(1), ElementHandle(0), 3) is Order.LESS
    assert cmp.comparisons_used == majority_repetitions(4, 3)


def test_majority_query(make_relevance_oracle):
    truth = GroundTruth([1, 0, 2], 1)
    oracle = make_relevance_oracle(truth, 0.0)
    assert majority_query(oracle, ElementHandle(1), 1) is Relevance.RELEVANT
    assert majority_query(oracle, ElementHandle(0), 5) is Relevance.NOT_RELEVANT
    with pytest.raises(InvalidParameterError):
        majority_query(oracle, ElementHandle(0), 2)
