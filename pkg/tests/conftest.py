import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "projprod",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("projprod")


def mat(rows):
    return np.asarray(rows, dtype=np.complex128)


@pytest.fixture
def lines45():
    """diag(1,0) and the projection onto span{(1,1)/sqrt 2}."""
    return mat([[1, 0], [0, 0]]), 0.5 * mat([[1, 1], [1, 1]])
