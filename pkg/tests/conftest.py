import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from diam2aug.gadget import CLOSED_NEIGHBORHOOD, TWIN_ONLY, build_gadget
from diam2aug.graph import from_edge_list


@pytest.fixture
def p3():
    return from_edge_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def p4():
    return from_edge_list(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def p5():
    return from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def c5():
    return from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def k3():
    return from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def gadget_p3(p3):
    return build_gadget(p3, CLOSED_NEIGHBORHOOD)


@pytest.fixture
def gadget_p3_twin(p3):
    return build_gadget(p3, TWIN_ONLY)
