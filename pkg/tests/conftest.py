import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from diskchords import RandomSource

# Property tests draw from one profile so CI and local runs agree.
settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return RandomSource(1234)


@pytest.fixture
def frame_batch():
    """2000 valid chord frames drawn once per test that needs bulk input."""
    from diskchords import sampling

    source = RandomSource(99)
    rho, gamma, t_a, t_b = sampling.sample_segment_frames(source, 2000)
    return np.stack([rho, gamma, t_a, t_b], axis=1)
