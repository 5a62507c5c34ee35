from fractions import Fraction

import pytest

from orbitkit.sinteger import new_map

TEST_MATRIX = [
    (2, ()), (2, (3,)), (2, (5,)), (2, (7,)), (2, (3, 5)), (2, (3, 7)), (2, (5, 7)),
    (2, (3, 5, 7)), (3, (2,)), (Fraction(3, 2), (2, 5)),
]


@pytest.fixture(scope="session")
def flagship():
    return new_map(2, [3])


@pytest.fixture(scope="session")
def flagship_table(flagship):
    from orbitkit.sinteger import orbit_table
    return orbit_table(flagship, 2400)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
