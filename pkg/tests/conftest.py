import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator shared by the randomized tests."""

    return np.random.default_rng(20240611)
