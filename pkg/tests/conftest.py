import pytest

from zzcompile import graph as G
from zzcompile.oracle import brute_force_gc

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class OracleTable:
    """Exact coupling numbers, computed once per session and keyed by graph."""

    def __init__(self):
        self._gc = {}

    def gc(self, g):
        if g not in self._gc:
            self._gc[g] = brute_force_gc(g)
        return self._gc[g][0]

    def solution(self, g):
        self.gc(g)
        return self._gc[g][1]


@pytest.fixture(scope="session")
def oracle():
    return OracleTable()


@pytest.fixture(scope="session")
def small_graphs():
    return {n: list(G.all_graphs(n)) for n in range(1, 6)}
