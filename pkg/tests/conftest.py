"""pytest fixtures for simplified testing."""
import pytest

from cutpath.data import LineNetwork, Network


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slow statistical checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def path_graph():
    """The path 0 - 1 - 2 with unit conductances."""
    return Network(3, [0, 1], [1, 2], [1.0, 1.0])


@pytest.fixture
def triangle():
    """The triangle on 0, 1, 2 with unit conductances."""
    return Network(3, [0, 1, 0], [1, 2, 2], [1.0, 1.0, 1.0])


@pytest.fixture
def unit_chain():
    return LineNetwork.unit_chain(10)


@pytest.fixture
def geometric_chain():
    """Rungs `w(i, i+1) = 4**i` on `{0..6}`."""
    return LineNetwork.geometric(6, 4.0)
