"""Tests for the FindOne multi-phase process."""
import pytest

from core.errors import InvalidParameterError
from core.oracles import ElementHandle, GroundTruth, NoisyRelevanceOracle
from core.profile import ConstantsProfile, FaultProfile
from retrieval.multiphase import (CAP_FACTOR, PhaseSchedule, find_one, find_one_dense,
                                  pad_to_power_of_two)


def test_phase_lengths():
    schedule = PhaseSchedule(256, FaultProfile(0.1))
    assert schedule.phases == 9
    assert [schedule.test_length(i) for i in (1, 2, 3)] == [37, 73, 145]
    assert schedule.cap == CAP_FACTOR * 6 * 256


def test_schedule_needs_power_of_two():
    with pytest.raises(InvalidParameterError):
        PhaseSchedule(12, FaultProfile(0.1))


def test_phase_range():
    with pytest.raises(InvalidParameterError):
        PhaseSchedule(8, FaultProfile(0.1)).test_length(5)


def test_padding(rng):
    S = [ElementHandle(i) for i in range(5)]
    padded = pad_to_power_of_two(rng, S)
    assert len(padded) == 8
    assert padded[:5] == S


def test_first_relevant_element_cost(rng):
    truth = GroundTruth([0, 3, 1, 2, 4, 5, 6, 7], 6)
    oracle = NoisyRelevanceOracle.from_truth(truth, FaultProfile(0.0), rng)
    assert find_one_dense(oracle, truth.elements()) == ElementHandle(0)
    assert oracle.queries_used == PhaseSchedule(8, oracle.profile).full_pass


def test_fault_free_returns_first_relevant(rng):
    truth = GroundTruth([7, 6, 0, 1, 2, 3, 4, 5], 6)
    oracle = NoisyRelevanceOracle.from_truth(truth, FaultProfile(0.0), rng)
    assert find_one_dense(oracle, truth.elements()) == ElementHandle(2)


def test_exhaustion_falls_back_to_first_element(rng):
    oracle = NoisyRelevanceOracle(set(), 4, FaultProfile(0.0), rng)
    S = [ElementHandle(i) for i in range(4)]
    assert find_one_dense(oracle, S) == ElementHandle(0)


def test_queries_stay_under_cap(make_truth, make_relevance_oracle):
    truth = make_truth(64, 48)
    for _ in range(20):
        oracle = make_relevance_oracle(truth, 0.1)
        find_one_dense(oracle, truth.elements())
        schedule = PhaseSchedule(64, oracle.profile)
        assert oracle.queries_used <= schedule.cap + schedule.test_length(schedule.phases)


def test_empty_input(rng):
    oracle = NoisyRelevanceOracle({0}, 2, FaultProfile(0.1), rng)
    with pytest.raises(InvalidParameterError):
        find_one_dense(oracle, [])


def test_fault_free_find_one(make_truth, make_relevance_oracle):
    truth = make_truth(512, 32)
    oracle = make_relevance_oracle(truth, 0.0, ConstantsProfile.PRACTICAL)
    assert truth.is_small(find_one(oracle, truth.elements(), 32))


class _FailsAtPhase(NoisyRelevanceOracle):
    """Fault-free oracle except that `victim` passes tests 1..phase-1 and fails test phase."""

    def __init__(self, truth, rng, victim, phase):
        super().__init__(truth.small_ids(), truth.n, FaultProfile(0.0), rng)
        self.victim = victim
        self.phase = phase
        self.tests_taken = 0

    def tally_relevant(self, x, times):
        if x != self.victim:
            return super().tally_relevant(x, times)
        self.tests_taken += 1
        self.queries_used += times
        return times if self.tests_taken < self.phase else 0


@pytest.mark.parametrize("phase", [1, 2, 3])
def test_failed_element_costs_its_passes(rng, phase):
    truth = GroundTruth([2, 0, 1, 3], 3)
    oracle = _FailsAtPhase(truth, rng, ElementHandle(0), phase)
    schedule = PhaseSchedule(4, oracle.profile)
    assert find_one_dense(oracle, truth.elements()) == ElementHandle(1)
    assert oracle.queries_used == schedule.pass_cost(phase) + schedule.full_pass


def test_pass_cost_closed_form():
    profile = FaultProfile(0.1)
    schedule = PhaseSchedule(256, profile)
    for phase in range(1, schedule.phases + 1):
        expected = sum(2 ** (j - 1) * 6 * profile.c_p + 1 for j in range(1, phase + 1))
        assert schedule.pass_cost(phase) == expected
