import random

import pytest

from bsdh_toric import bott_fan, root_data

EXAMPLE_WORD = (2, 1, 3, 1, 2, 1, 2)


def bott(family, rank, word):
    return bott_fan.bott_matrix(root_data.builtin_cartan(family, rank), word)


def product_fan(r):
    """Bott matrix of (P^1)^r: every off-diagonal pairing zero."""
    return bott_fan.BottMatrix.from_upper([[0] * r for _ in range(r)])


@pytest.fixture
def rng():
    return random.Random(20240607)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
