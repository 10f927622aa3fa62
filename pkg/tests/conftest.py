import pytest

from fuzzytoc.fuzzy_core import FuzzyState, TriangularFuzzyNumber
from fuzzytoc.fuzzy_time import FuzzyProblem

XI = FuzzyState(TriangularFuzzyNumber(-6, -5, -4), TriangularFuzzyNumber(2, 3, 4))
ZETA = FuzzyState(TriangularFuzzyNumber(-0.5, 0, 0.5), TriangularFuzzyNumber(-0.5, 0, 0.5))


@pytest.fixture
def pendulum_problem():
    """The fuzzified pendulum damping problem, coarse enough for unit tests."""
    return FuzzyProblem(XI, ZETA, nodes_per_edge=16)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
