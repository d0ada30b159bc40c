"""Shared fixtures: reference probability vectors and the 4x4 test matrix."""

import numpy as np
import pytest

from specmom import matio
from specmom.prob import hypocycloid, validate


@pytest.fixture(scope="session")
def chebyshev():
    return hypocycloid(2)


@pytest.fixture(scope="session")
def deltoid():
    return hypocycloid(3)


@pytest.fixture(scope="session")
def astroid():
    return hypocycloid(4)


@pytest.fixture(scope="session")
def mixed23():
    return validate([7 / 12, 0, 1 / 4, 1 / 6])


@pytest.fixture(scope="session")
def mixed24():
    return validate([5 / 8, 0, 1 / 4, 0, 1 / 8])


@pytest.fixture(scope="session")
def table2_rows(chebyshev, deltoid, astroid, mixed23, mixed24):
    """The six named dynamic-parameter rows and their 2/sigma^2 values."""
    return [
        ("dynamic 2", chebyshev, 2.0),
        ("dynamic 3", deltoid, 1.0),
        ("dynamic 4", astroid, 2 / 3),
        ("dynamic 5", hypocycloid(5), 1 / 2),
        ("dynamic 2-3", mixed23, 4 / 3),
        ("dynamic 2-4", mixed24, 1.0),
    ]


@pytest.fixture(scope="session")
def toy():
    return matio.toy_matrix()


@pytest.fixture(scope="session")
def toy_truth():
    truth = np.zeros(4)
    truth[0] = 1.0
    return truth
