"""Pytest configuration and fixtures for noisy-select tests."""
import logging
import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.config_manager import ConfigManager  # noqa: E402
from core.oracles import GroundTruth, NoisyComparator, NoisyRelevanceOracle  # noqa: E402
from core.profile import ConstantsProfile, FaultProfile  # noqa: E402

# Configure logging for tests
logging.basicConfig(
    level=logging.DEBUG,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)


@pytest.fixture
def rng() -> np.random.Generator:
    """Provide a seeded Philox generator.

    Returns:
        Generator seeded with 12345
    """
    return np.random.Generator(np.random.Philox(12345))


@pytest.fixture
def make_truth(rng) -> Callable[..., GroundTruth]:
    """Factory for random instances of a given size and threshold."""
    def factory(n: int, k: int) -> GroundTruth:
        return GroundTruth.random(n, k, rng)
    return factory


@pytest.fixture
def make_comparator(rng) -> Callable[..., NoisyComparator]:
    """Factory for comparators over a truth at fault rate p."""
    def factory(truth: GroundTruth, p: float = 0.0,
                profile: ConstantsProfile = ConstantsProfile.PAPER_FAITHFUL,
                **overrides) -> NoisyComparator:
        return NoisyComparator(truth, FaultProfile(p, profile, **overrides), rng)
    return factory


@pytest.fixture
def make_relevance_oracle(rng) -> Callable[..., NoisyRelevanceOracle]:
    """Factory for relevance oracles whose relevant set is the k smallest."""
    def factory(truth: GroundTruth, p: float = 0.0,
                profile: ConstantsProfile = ConstantsProfile.PAPER_FAITHFUL,
                **overrides) -> NoisyRelevanceOracle:
        return NoisyRelevanceOracle.from_truth(truth, FaultProfile(p, profile, **overrides), rng)
    return factory


@pytest.fixture
def config_dir(tmp_path) -> Path:
    """Fresh config directory; the ConfigManager singleton is reset around the test."""
    ConfigManager.reset()
    directory = tmp_path / "config"
    directory.mkdir()
    yield directory
    ConfigManager.reset()


def pytest_configure(config):
    """Configure pytest with custom markers.

    Args:
        config: Pytest config object
    """
    config.addinivalue_line(
        "markers", "unit: mark test as unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as integration test"
    )
    config.addinivalue_line(
        "markers", "performance: mark test as a Monte Carlo acceptance run"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers.

    Args:
        config: Pytest config object
        items: List of test items
    """
    for item in items:
        # Add unit marker by default
        if not any(marker.name in ['integration', 'performance']
                   for marker in item.iter_markers()):
            item.add_marker(pytest.mark.unit)
