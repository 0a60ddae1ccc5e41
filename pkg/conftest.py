"""Shared fixtures: small fields and the Drinfeld modules the checks run on."""
import os
from datetime import timedelta

import pytest
from hypothesis import settings, HealthCheck, Verbosity

from drinfeld import DrinfeldModule
from finite_field import fq_make


# register test flags for hypothesis; allows e.g. extended deadlines on CI
settings.register_profile("ci", deadline=timedelta(milliseconds=5000), suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=10)
settings.register_profile("debug", max_examples=10, verbosity=Verbosity.verbose)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def F2():
    return fq_make(2)


@pytest.fixture
def F3():
    return fq_make(3)


@pytest.fixture
def F4():
    return fq_make(2, 2)


@pytest.fixture
def F5():
    return fq_make(5)


@pytest.fixture
def carlitz2(F2):
    return DrinfeldModule.carlitz(F2)


@pytest.fixture
def rank2_f2(F2):
    """phi_theta = theta + tau^2 over F_2"""
    return DrinfeldModule.from_spec(F2, "[0, 1]")


@pytest.fixture
def carlitz3(F3):
    """C_theta = theta + tau over F_3"""
    return DrinfeldModule.carlitz(F3)


@pytest.fixture
def rank2_f3(F3):
    """phi_theta = theta + tau^2 over F_3"""
    return DrinfeldModule.from_spec(F3, "[0, 1]")


@pytest.fixture
def rank2_f5(F5):
    """phi_theta = theta + tau + tau^2 over F_5"""
    return DrinfeldModule.from_spec(F5, "[1, 1]")


@pytest.fixture
def r0_zero(F3):
    """phi_theta = theta + theta*tau over F_3: no Frobenius polynomial at f = theta"""
    return DrinfeldModule.from_spec(F3, "[theta]")
