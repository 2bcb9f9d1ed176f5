"""Tests for the ground truth, the noisy oracles and sampling."""
import numpy as np
import pytest

from core.errors import InvalidParameterError
from core.oracles import (ElementHandle, GroundTruth, NoisyComparator, NoisyRelevanceOracle, Order,
                          Relevance, sample_arrays, sample_with_replacement)
from core.profile import FaultProfile


class TestGroundTruth:
    def test_rejects_non_permutation(self):
        with pytest.raises(InvalidParameterError):
            GroundTruth([0, 0, 1], 1)

    @pytest.mark.parametrize("k", [0, 4])
    def test_rejects_k_out_of_range(self, k):
        with pytest.raises(InvalidParameterError):
            GroundTruth([2, 0, 1, 3], k)

    def test_small_ids(self):
        truth = GroundTruth([3, 0, 2, 1], 2)
        assert truth.small_ids() == frozenset({1, 3})
        assert truth.is_small(ElementHandle(3, 5))
        assert not truth.is_small(ElementHandle(0))

    def test_rank_rejects_foreign_handle(self):
        truth = GroundTruth([1, 0], 1)
        with pytest.raises(InvalidParameterError):
            truth.rank(ElementHandle(2))

    def test_random_is_seeded(self):
        a = GroundTruth.random(50, 5, np.random.Generator(np.random.Philox(7)))
        b = GroundTruth.random(50, 5, np.random.Generator(np.random.Philox(7)))
        assert np.array_equal(a.ranks, b.ranks)


class TestNoisyComparator:
    def test_fault_free_compare(self, rng):
        cmp = NoisyComparator(GroundTruth([2, 0, 1], 1), FaultProfile(0.0), rng)
        x, y = ElementHandle(1), ElementHandle(0)
        assert cmp.compare(x, y) is Order.LESS
        assert cmp.compare(y, x) is Order.GREATER
        assert cmp.comparisons_used == 2

    def test_copies_use_ordinal_order(self, rng):
        cmp = NoisyComparator(GroundTruth([1, 0], 1), FaultProfile(0.4), rng)
        a0, a1 = ElementHandle(0, 0), ElementHandle(0, 1)
        for _ in range(50):
            assert cmp.compare(a0, a1) is Order.LESS
            assert cmp.compare(a1, a0) is Order.GREATER

    def test_empirical_flip_rate(self, rng):
        cmp = NoisyComparator(GroundTruth([0, 1], 1), FaultProfile(0.3), rng)
        calls = 10 ** 6
        less = int(cmp.tally_less([ElementHandle(0)], [ElementHandle(1)], calls)[0])
        assert abs((calls - less) / calls - 0.3) < 0.005
        assert cmp.comparisons_used == calls

    def test_tally_charges_every_pair(self, rng):
        cmp = NoisyComparator(GroundTruth([0, 1, 2, 3], 2), FaultProfile(0.1), rng)
        left = [ElementHandle(0), ElementHandle(2)]
        right = [ElementHandle(1), ElementHandle(2, 1)]
        votes = cmp.tally_less(left, right, 11)
        assert votes.shape == (2,)
        assert votes[1] == 11
        assert cmp.comparisons_used == 22

    def test_tally_rejects_mismatched_lengths(self, rng):
        cmp = NoisyComparator(GroundTruth([0, 1], 1), FaultProfile(0.1), rng)
        with pytest.raises(InvalidParameterError):
            cmp.tally_less([ElementHandle(0)], [], 3)


class TestNoisyRelevanceOracle:
    def test_fault_free_query(self, rng):
        oracle = NoisyRelevanceOracle({1}, 3, FaultProfile(0.0), rng)
        assert oracle.query(ElementHandle(1)) is Relevance.RELEVANT
        assert oracle.query(ElementHandle(0)) is Relevance.NOT_RELEVANT
        assert oracle.queries_used == 2

    def test_empirical_error_rate(self, rng):
        oracle = NoisyRelevanceOracle({0}, 2, FaultProfile(0.1), rng)
        calls = 10 ** 5
        hits = oracle.tally_relevant(ElementHandle(0), calls)
        assert abs((calls - hits) / calls - 0.1) < 0.01

    def test_shaped_tally(self, rng):
        oracle = NoisyRelevanceOracle({0}, 2, FaultProfile(0.0), rng)
        counts = oracle.tally_relevant_arrays(np.array([0, 1]), 5, shape=(3,))
        assert counts.tolist() == [[5, 5, 5], [0, 0, 0]]
        assert oracle.queries_used == 30

    def test_from_truth(self, rng):
        truth = GroundTruth([3, 0, 2, 1], 2)
        oracle = NoisyRelevanceOracle.from_truth(truth, FaultProfile(0.0), rng)
        assert oracle.relevant == truth.small_ids()


class TestSampleWithReplacement:
    def test_single_source_ordinals(self, rng):
        sample = sample_with_replacement(rng, [ElementHandle(4)], 3)
        assert sample == [ElementHandle(4, 0), ElementHandle(4, 1), ElementHandle(4, 2)]

    def test_zero_count(self, rng):
        assert sample_with_replacement(rng, [], 0) == []

    def test_empty_source(self, rng):
        with pytest.raises(InvalidParameterError):
            sample_with_replacement(rng, [], 2)

    def test_frequencies_match_multinomial(self, rng):
        source = [ElementHandle(i) for i in range(1000)]
        sample = sample_with_replacement(rng, source, 10 ** 6)
        counts = np.bincount([h.source_id for h in sample], minlength=1000)
        sigma = np.sqrt(10 ** 6 * (1 / 1000) * (1 - 1 / 1000))
        assert np.all(np.abs(counts - 1000) <= 5 * sigma)


class TestSampleArrays:
    def test_shape_and_sources(self, rng):
        drawn, ordinals = sample_arrays(rng, np.array([3, 9, 11]), 5, 40)
        assert drawn.shape == ordinals.shape == (5, 40)
        assert set(np.unique(drawn)) <= {3, 9, 11}

    def test_ordinals_follow_draw_order_per_row(self, rng):
        drawn, ordinals = sample_arrays(rng, np.arange(4), 50, 30)
        for row_sources, row_ordinals in zip(drawn, ordinals):
            seen = {}
            for source, ordinal in zip(row_sources.tolist(), row_ordinals.tolist()):
                assert ordinal == seen.get(source, 0)
                seen[source] = ordinal + 1

    def test_single_source(self, rng):
        drawn, ordinals = sample_arrays(rng, np.array([7]), 2, 3)
        assert drawn.tolist() == [[7, 7, 7], [7, 7, 7]]
        assert ordinals.tolist() == [[0, 1, 2], [0, 1, 2]]

    def test_empty_source(self, rng):
        with pytest.raises(InvalidParameterError):
            sample_arrays(rng, np.array([], dtype=np.int64), 2, 3)
