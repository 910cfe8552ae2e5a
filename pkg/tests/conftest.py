from pathlib import Path

import pytest

from dprisk.model import Universe

FIXTURES = Path(__file__).parent / "fixtures"

# the worked commuting-distance example: full data set and its two neighbors
TABLE1 = [3, 1, 10, 675, 17]
WITHOUT_MAX = [3, 1, 10, 17]
WITHOUT_MIN = [3, 10, 675, 17]


@pytest.fixture
def table1():
    return Universe(TABLE1, label="distance-work")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
