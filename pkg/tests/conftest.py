import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latq import CodeChain  # noqa: E402

# Acceptance lines collected by test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def dual6():
    """q=6, a=2, dual generators (4,2),(0,1), r=(1,2); not closed."""
    return CodeChain(6, 2, 2, "dual", [(4, 2), (0, 1)], (1, 2))


@pytest.fixture
def dual6_hat():
    return CodeChain(6, 2, 2, "dual", [(2, 4), (0, 1)], (1, 2))


@pytest.fixture
def dual6_qahinv():
    return CodeChain(6, 2, 2, "dual", [(4, 1), (3, 0)], (1, 2))


@pytest.fixture
def primal3():
    """q=3, n=3 chain <(1,1,1)> in <(1,1,1),(0,0,1)>; closed."""
    return CodeChain(3, 3, 2, "primal", [(1, 1, 1), (0, 0, 1)], (2, 1))


@pytest.fixture
def primal6():
    return CodeChain(6, 2, 2, "primal", [(1, 5), (4, 1)], (2, 1))


@pytest.fixture
def binary4():
    """Binary dual chain C_1^perp = <(1,1,1,1)> in C_2^perp = <(1,1,1,1),(0,0,0,1)>."""
    return CodeChain(2, 4, 2, "dual", [(1, 1, 1, 1), (0, 0, 0, 1)], (1, 2))


@pytest.fixture
def codec6():
    return CodeChain(6, 2, 2, "dual", [(4, 1), (3, 1)], (1, 2))
