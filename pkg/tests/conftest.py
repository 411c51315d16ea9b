"""Wspólne fikstury testów."""

import pytest

from core.models import RegimeParams
from core.spectral.grid import Grid


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="uruchom testy oznaczone slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="wymaga --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def grid():
    return Grid(n_points=256, length=51.2)


@pytest.fixture
def critical():
    return RegimeParams(epsilon=0.1, mu=0.01, delta=0.8, gamma=0.64)


@pytest.fixture
def non_critical():
    return RegimeParams(epsilon=0.1, mu=0.01, delta=0.5, gamma=0.9)
