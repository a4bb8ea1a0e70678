import numpy as np
import pytest
from hypothesis import settings

from drazinpert.harness.worked import diagonal_pair, shift_pair

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.register_profile("stress", deadline=None, max_examples=600)
settings.load_profile(__import__("os").environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def diag_pair():
    return diagonal_pair()


@pytest.fixture
def shift():
    return shift_pair()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
