from pathlib import Path

import pytest

from necklace.expr import parse_element
from necklace.quiver import load_quiver

QUIVERS = Path(__file__).resolve().parent.parent / "quivers"


def quiver(name):
    return load_quiver(QUIVERS / f"{name}.qv")


@pytest.fixture(scope="session")
def loop1():
    return quiver("loop1")


@pytest.fixture(scope="session")
def loop2():
    return quiver("loop2")


@pytest.fixture(scope="session")
def a2loop():
    return quiver("a2loop")


@pytest.fixture(params=["loop1", "loop2", "a2loop"], scope="session")
def any_quiver(request):
    return quiver(request.param)


@pytest.fixture
def el():
    """``el(dq, "(e)&(e*) + 1/2 h @v")`` parses an element."""
    return parse_element
