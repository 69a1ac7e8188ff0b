import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def centers():
    from qrdyn import params

    return params.polynomial_centers()


@pytest.fixture(scope="session")
def special():
    from qrdyn import params

    return params.special_parameters()


@pytest.fixture(scope="session")
def capture_parameter(special):
    """A confirmed capture parameter in the airplane piece; found once per
    session by the scan protocol (also exercised by the acceptance suite)."""
    from qrdyn import classify

    return classify.find_capture_parameter()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
