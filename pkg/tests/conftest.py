from __future__ import annotations

import pytest

from vsi import Quiver, example_quiver, parse_field


@pytest.fixture(scope="session")
def gf():
    return parse_field("fp:32003")


@pytest.fixture(scope="session")
def qq():
    return parse_field("q")


@pytest.fixture(scope="session")
def ex_quiver():
    return example_quiver()


@pytest.fixture(scope="session")
def a2():
    return Quiver(["1", "2"], [("1", "2")])


@pytest.fixture(scope="session")
def a3():
    return Quiver(["1", "2", "3"], [("1", "2"), ("2", "3")])


@pytest.fixture(scope="session")
def a3_alt():
    return Quiver(["1", "2", "3"], [("2", "1"), ("2", "3")])


@pytest.fixture(scope="session")
def a4():
    return Quiver(["1", "2", "3", "4"], [("1", "2"), ("2", "3"), ("3", "4")])


@pytest.fixture(scope="session")
def d4():
    return Quiver(["1", "2", "3", "4"], [("1", "4"), ("2", "4"), ("3", "4")])


@pytest.fixture(scope="session")
def d4_out():
    return Quiver(["1", "2", "3", "4"], [("4", "1"), ("4", "2"), ("4", "3")])
