from pathlib import Path

import pytest

from omlink.geometry import PointConfiguration

DATA = Path(__file__).parent / "data"
SLICE = DATA / "om94_slice_1000.txt"

# Point 5 sits inside the tetrahedron spanned by the first four.
TETRA = PointConfiguration(((0, 0, 0), (6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 1, 1)))

# Triangle 123 in the plane z = 0 around the origin; segment 45 runs down the
# z-axis through it; point 6 closes the second triangle off to the side.
HOPF = PointConfiguration(((1, 0, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, 2), (0, 0, -2), (3, 1, 1)))


@pytest.fixture
def tetra():
    return TETRA


@pytest.fixture
def hopf():
    return HOPF


@pytest.fixture(scope="session")
def slice_path():
    return SLICE


_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
