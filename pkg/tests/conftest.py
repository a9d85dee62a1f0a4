import pytest

from zdc.pipeline import default_schedule
from zdc.published import published_rows
from zdc.tables import reproduce_schedule


@pytest.fixture(scope="session")
def schedule():
    return default_schedule()


@pytest.fixture(scope="session")
def published():
    return published_rows()


@pytest.fixture(scope="session")
def reproduced():
    """All 39 rows in the default mode (literal d3, certified J)."""
    return reproduce_schedule()


@pytest.fixture(scope="session")
def first(schedule):
    return schedule[0]
