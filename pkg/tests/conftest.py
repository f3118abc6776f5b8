import os
from datetime import timedelta

import pytest
from hypothesis import HealthCheck, settings

from crystalk import oracle

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=timedelta(seconds=5), max_examples=50)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def small_corpora():
    """One modest corpus per rank, shared across property tests."""
    return {n: oracle.involution_corpus(n, seed=20240 + n, count=3) for n in range(1, 6)}
