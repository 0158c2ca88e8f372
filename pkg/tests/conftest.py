import pytest

from gamow_barrier.barrier import find_resonances
from gamow_barrier.models import BarrierParams, LogLevel
from gamow_barrier.utils.logging import get_logger


@pytest.fixture(scope="session")
def cfg0() -> BarrierParams:
    return BarrierParams.cfg0()


@pytest.fixture(scope="session")
def quiet_logger():
    return get_logger("tests", LogLevel.QUIET)


@pytest.fixture(scope="session")
def poles(cfg0, quiet_logger):
    """First 40 pole pairs of the reference barrier"""
    return find_resonances(cfg0, 40, quiet_logger)


@pytest.fixture(scope="session")
def long_poles(cfg0, quiet_logger):
    """Enough pairs for the doubling comparisons of the truncated series"""
    return find_resonances(cfg0, 1600, quiet_logger)
