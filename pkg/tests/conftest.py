from functools import lru_cache

import pytest

from tubulene_gp.config import TubuleneConfig
from tubulene_gp.graph_core import Graph
from tubulene_gp.tubulene import TubuleneParams, build_armchair


@lru_cache(maxsize=None)
def _armchair(n: int, p: int) -> tuple[Graph, TubuleneParams]:
    params = TubuleneParams(n, p)
    return build_armchair(params), params


@pytest.fixture
def armchair():
    """Returns a factory of ``(graph, params)`` pairs, memoised across the test session."""
    return _armchair


@pytest.fixture
def cycle():
    def _factory(length: int) -> Graph:
        return Graph.from_edges(length, [(i, (i + 1) % length) for i in range(length)])

    return _factory


@pytest.fixture
def path_graph():
    def _factory(length: int) -> Graph:
        return Graph.from_edges(length, [(i, i + 1) for i in range(length - 1)])

    return _factory


@pytest.fixture
def config() -> TubuleneConfig:
    return TubuleneConfig()
