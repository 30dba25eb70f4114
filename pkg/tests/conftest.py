from itertools import permutations

import pytest

from permmatch.perm import Permutation


def perms_upto(n: int):
    return [Permutation(v) for m in range(1, n + 1) for v in permutations(range(1, m + 1))]


@pytest.fixture(scope="session")
def texts_upto_5():
    return perms_upto(5)


@pytest.fixture
def T():
    """The running example text."""
    return Permutation((1, 6, 4, 2, 5, 3))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
