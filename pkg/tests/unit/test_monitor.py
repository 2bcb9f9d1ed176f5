"""Tests for the trial throughput monitor."""
import pytest

from harness import Algorithm, ExperimentConfig, run_trials
from performance import PerformanceMonitor


def test_updates_ignored_before_initialize():
    monitor = PerformanceMonitor()
    monitor.update(0.01)
    assert monitor.trial_count == 0


def test_rolling_latency():
    monitor = PerformanceMonitor(window_size=2)
    monitor.initialize()
    for duration in (0.010, 0.020, 0.030):
        monitor.update(duration)
    assert monitor.trial_count == 3
    assert monitor.latency_ms == pytest.approx(25.0)
    assert monitor.trials_per_s > 0


def test_stats_and_reset():
    monitor = PerformanceMonitor()
    monitor.initialize()
    monitor.update(0.005)
    stats = monitor.get_stats()
    assert set(stats) == {'trials_per_s', 'latency_ms', 'memory_mb', 'trial_count'}
    assert stats['memory_mb'] > 0
    monitor.reset()
    assert monitor.trial_count == 0
    assert len(monitor.durations) == 0


def test_run_trials_feeds_monitor():
    monitor = PerformanceMonitor(log_every=2)
    monitor.initialize()
    run_trials(ExperimentConfig(Algorithm.FINDMIN, n=16, p=0.1, trials=4, seed=3), monitor)
    assert monitor.trial_count == 4
    monitor.shutdown()
    monitor.update(0.01)
    assert monitor.trial_count == 4
