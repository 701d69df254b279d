import os

import pytest

from src.config import FIXTURES_DIR
from src.graph.digraph import from_arc_list
from src.persistence import formats

# vertex names of the seven-vertex fixture
A, B, C, D, E, F, G = range(7)


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


@pytest.fixture
def triangles7():
    path = fixture_path("triangles7.dg")
    return formats.parse_digraph(formats.read_text(path), path)


@pytest.fixture
def triangles7_dec():
    path = fixture_path("triangles7.dec")
    return formats.parse_decomposition(formats.read_text(path), path)


@pytest.fixture
def path3():
    return from_arc_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return from_arc_list(3, [(0, 1), (1, 2), (2, 0)])
