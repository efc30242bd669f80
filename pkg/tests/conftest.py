import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

EXAMPLE_CNF = "p cnf 4 4\n1 2 3 0\n-1 -2 3 0\n-1 2 -3 0\n1 2 -4 0\n"
EXAMPLE_CLAUSES = [[1, 2, 3], [-1, -2, 3], [-1, 2, -3], [1, 2, -4]]
SIX_TERMS = [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (2, 3, 7), (2, 3, 8)]
GOLDEN_Q = [
    [1, -12, -2, 1, 20],
    [0, 1, -1, 1, 20],
    [0, 0, 1, 0, 3],
    [0, 0, 0, -1, -1],
    [0, 0, 0, 0, -30],
]

_criteria: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    def record(number, ok, detail):
        _criteria.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def example_instance():
    from minqubo import parse_dimacs
    return parse_dimacs(EXAMPLE_CNF, source_name="example4.cnf")
