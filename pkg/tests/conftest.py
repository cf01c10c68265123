import sys
from pathlib import Path

import pytest

from dqratpu.core import Formula, Prefix
from dqratpu.genfam import running_example
from dqratpu.textio import parse_dqdimacs, parse_dqrat

DATA = Path(__file__).parent / "data"

# Example formula with u=1 v=2 w=3 universal and a..e = 4..8 existential
LATTICE_NAMES = {1: "u", 2: "v", 3: "w", 4: "a", 5: "b", 6: "c", 7: "d", 8: "e"}


@pytest.fixture
def data():
    return DATA


@pytest.fixture
def two_player():
    """forall u v, exists x(u) y(v): the six-clause false DQBF."""
    return parse_dqdimacs((DATA / "two_player.dqdimacs").read_text())


@pytest.fixture
def golden_script():
    return parse_dqrat((DATA / "two_player.dqrat").read_text())


@pytest.fixture
def pathy():
    """forall u v exists x y z with four clauses where pure paths differ from plain ones."""
    return parse_dqdimacs((DATA / "four_clause.qdimacs").read_text())


@pytest.fixture
def lattice_prefix():
    return parse_dqdimacs((DATA / "lattice.dqdimacs").read_text()).prefix


def qbf(blocks, clauses):
    """Build a formula from quantifier blocks like [("a", [1]), ("e", [2, 3])]."""
    universals, deps, order, seen = [], {}, [], []
    for q, vs in blocks:
        for v in vs:
            order.append(v)
            if q == "a":
                universals.append(v)
                seen.append(v)
            else:
                deps[v] = list(seen)
    return Formula(Prefix(universals, deps, order), clauses)


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acc.RESULTS):
        terminalreporter.write_line(line)
