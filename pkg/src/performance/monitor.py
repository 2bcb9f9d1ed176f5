"""Performance monitoring module."""
import logging
import time
from collections import deque
from typing import Dict

import psutil

logger = logging.getLogger(__name__)


class PerformanceMonitor:
    """Tracks throughput and latency of experiment trials.

    Keeps a rolling window of trial durations and samples the resident
    memory of the process through psutil.
    """

    def __init__(self, window_size: int = 100, log_every: int = 0):
        """Initialize performance monitor.

        Args:
            window_size: Number of trials kept in the rolling window
            log_every: Log statistics every this many trials (0 disables)
        """
        self.window_size = window_size
        self.log_every = log_every

        self.trials_per_s = 0.0
        self.latency_ms = 0.0
        self.memory_mb = 0.0
        self.trial_count = 0

        self.durations = deque(maxlen=window_size)
        self.started_at = time.perf_counter()
        self.is_initialized = False
        self._process = psutil.Process()

    def initialize(self) -> bool:
        self.is_initialized = True
        self.started_at = time.perf_counter()
        logger.debug(f"PerformanceMonitor initialized with window_size={self.window_size}")
        return True

    def update(self, duration_s: float) -> None:
        """Record one finished trial.

        Args:
            duration_s: Wall time of the trial in seconds
        """
        if not self.is_initialized:
            return

        self.durations.append(duration_s)
        self.trial_count += 1
        elapsed = time.perf_counter() - self.started_at
        self.trials_per_s = self.trial_count / elapsed if elapsed > 0 else 0.0
        self.latency_ms = 1000.0 * sum(self.durations) / len(self.durations)

        if self.log_every and self.trial_count % self.log_every == 0:
            self.log_stats()

    def sample_memory(self) -> float:
        try:
            self.memory_mb = self._process.memory_info().rss / (1024 * 1024)
        except psutil.Error as e:
            logger.debug(f"memory sample failed: {e}")
        return self.memory_mb

    def get_stats(self) -> Dict[str, float]:
        return {
            'trials_per_s': self.trials_per_s,
            'latency_ms': self.latency_ms,
            'memory_mb': self.sample_memory(),
            'trial_count': self.trial_count,
        }

    def reset(self) -> None:
        """Reset all performance metrics."""
        self.durations.clear()
        self.trials_per_s = 0.0
        self.latency_ms = 0.0
        self.trial_count = 0
        self.started_at = time.perf_counter()

    def log_stats(self) -> None:
        stats = self.get_stats()
        logger.info(f"Performance - {stats['trial_count']} trials, "
                    f"{stats['trials_per_s']:.2f} trials/s, "
                    f"latency: {stats['latency_ms']:.2f}ms, "
                    f"memory: {stats['memory_mb']:.2f}MB")

    def shutdown(self) -> None:
        self.is_initialized = False
