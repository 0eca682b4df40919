import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bilattice_duality.corpus import corpus, prebilattice_corpus, unbounded_prebilattices


@pytest.fixture(scope="session")
def full_corpus():
    return corpus()


@pytest.fixture(scope="session")
def db_corpus(full_corpus):
    return [e for e in full_corpus if e.tag == "DB"]


@pytest.fixture(scope="session")
def pb_corpus():
    return prebilattice_corpus()


@pytest.fixture(scope="session")
def dpbu_corpus():
    return unbounded_prebilattices()


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
