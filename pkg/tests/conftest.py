from importlib import resources

import pytest

from cubroots import Design, GaussianMoments
from cubroots.io import load_design

FIXTURES = resources.files("cubroots") / "fixtures"

# the two-level 8-run design in k = 4, as +-1 coordinates
EXAMPLE1_SIGNS = [
    (1, 1, 1, 1), (1, 1, -1, 1), (1, -1, 1, -1), (1, -1, -1, -1),
    (-1, 1, 1, 1), (-1, -1, -1, 1), (-1, -1, -1, -1), (-1, 1, 1, -1),
]
EXAMPLE1_BASIS = [
    (0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0),
    (0, 0, 0, 1), (1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 1),
]
EXAMPLE2_BASIS = [(0, 0), (0, 1), (1, 0), (0, 3)]


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture
def example1() -> Design:
    return Design(2, 4, tuple(tuple(0 if x == 1 else 1 for x in d) for d in EXAMPLE1_SIGNS))


@pytest.fixture
def example2() -> Design:
    return load_design(fixture_path("example2_design.json"))


@pytest.fixture
def example3() -> Design:
    return load_design(fixture_path("example3_design.json"))


@pytest.fixture
def gauss2() -> GaussianMoments:
    return GaussianMoments(2)


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
