import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tunnelff import (DoubleDeltaBarrier, EckartBarrier, FFSchedule,
                      FreeParticle)
from tunnelff.regularize import StationaryFrame

settings.register_profile(
    "suite", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def eckart():
    return EckartBarrier()


@pytest.fixture(scope="session")
def double_delta():
    return DoubleDeltaBarrier()


@pytest.fixture(scope="session")
def free():
    return FreeParticle()


@pytest.fixture(scope="session")
def eckart_schedule():
    return FFSchedule(vbar=1.0, t_ff=10.0)


@pytest.fixture(scope="session")
def delta_schedule():
    return FFSchedule(vbar=1.0, t_ff=1.0)


@pytest.fixture(scope="session")
def eckart_frame(eckart, eckart_schedule):
    """Mid-drive Eckart frame shared by the drive/transport tests."""
    t = 3.7
    return StationaryFrame(eckart, 1.2, eckart_schedule.r_of_t(t)), t


@pytest.fixture(scope="session")
def delta_frame(double_delta, delta_schedule):
    t = 0.31
    return StationaryFrame(double_delta, 0.8, delta_schedule.r_of_t(t)), t


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
