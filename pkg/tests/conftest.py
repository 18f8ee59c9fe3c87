"""
Shared fixtures for the test suite.
"""

import logging

import pytest

from models import ChannelMode, NetworkConfig


@pytest.fixture(autouse=True)
def _quiet_logging(caplog):
    caplog.set_level(logging.WARNING)


@pytest.fixture
def reciprocal_k3_m6():
    return NetworkConfig(K=3, M=6, mode=ChannelMode.RECIPROCAL)


@pytest.fixture
def nonreciprocal_k1_m1():
    return NetworkConfig(K=1, M=1, mode=ChannelMode.NONRECIPROCAL)


@pytest.fixture
def r_values_reciprocal():
    return [round(0.005 * i, 12) for i in range(101)]
