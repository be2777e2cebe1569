import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from latpoly import DnfPolynomial, chain, product  # noqa: E402


@pytest.fixture(scope="session")
def c2():
    return chain(2)


@pytest.fixture(scope="session")
def c3():
    return chain(3)


@pytest.fixture(scope="session")
def b2():
    return product([2, 2])


def poly(lattice, n, terms):
    """``terms`` maps tuples of 1-based variables to coefficients."""
    return DnfPolynomial.from_terms(lattice, n, terms)


def median(lattice):
    t = lattice.top
    return poly(lattice, 3, {(1, 2): t, (1, 3): t, (2, 3): t})


# pentagon N5: 0 < 1 < 2 < 4, 0 < 3 < 4
N5_MEET = [[0, 0, 0, 0, 0], [0, 1, 1, 0, 1], [0, 1, 2, 0, 2], [0, 0, 0, 3, 3], [0, 1, 2, 3, 4]]
N5_JOIN = [[0, 1, 2, 3, 4], [1, 1, 2, 4, 4], [2, 2, 2, 4, 4], [3, 4, 4, 3, 4], [4, 4, 4, 4, 4]]

# diamond M3: 0 < 1, 2, 3 < 4, atoms pairwise incomparable
M3_MEET = [[0, 0, 0, 0, 0], [0, 1, 0, 0, 1], [0, 0, 2, 0, 2], [0, 0, 0, 3, 3], [0, 1, 2, 3, 4]]
M3_JOIN = [[0, 1, 2, 3, 4], [1, 1, 4, 4, 4], [2, 4, 2, 4, 4], [3, 4, 4, 3, 4], [4, 4, 4, 4, 4]]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
