from collections import Counter

import networkx as nx
import pytest

from tubulene_gp.graph_core import bfs_distances, distance_sum_to_set
from tubulene_gp.tubulene import (
    ParameterError,
    RimEnd,
    TubuleneParams,
    VertexId,
    degree_two_vertices,
    hexagons,
    layer_cycle,
    layer_set,
    rim_cycle,
)


@pytest.mark.parametrize("n, p", [(5, 1), (0, 1), (4, 0), (4, -2), (4.0, 1), (True, 1)])
def test_invalid_params(n, p):
    with pytest.raises(ParameterError):
        TubuleneParams(n, p)


@pytest.mark.parametrize("n, p", [(2, 1), (4, 1), (6, 4), (12, 3)])
def test_counts(armchair, n, p):
    g, params = armchair(n, p)
    assert g.vertex_count == 2 * n * (p + 1)
    assert g.edge_count == 3 * n * p + 2 * n


def test_smallest_tube(armchair):
    g, params = armchair(2, 1)
    assert g.vertex_count == 8
    assert g.edge_count == 10
    assert sum(1 for v in range(g.vertex_count) if g.degree(v) == 2) == 4
    assert [v.label() for v in rim_cycle(params, RimEnd.BOTTOM)] == ["v0[0,0]", "v0[0,1]", "v1[0,0]", "v1[0,1]"]


@pytest.mark.parametrize("n, p", [(4, 1), (8, 3), (10, 2)])
def test_degrees(armchair, n, p):
    g, params = armchair(n, p)
    degree_two = degree_two_vertices(params)
    assert len(degree_two) == 2 * n
    for v in range(g.vertex_count):
        assert g.degree(v) == (2 if v in degree_two else 3)


@pytest.mark.parametrize("n, p", [(4, 2), (8, 4), (10, 3)])
def test_bipartite_by_ring_position(armchair, n, p):
    g, params = armchair(n, p)
    colour = {}
    for i in range(p + 1):
        for position, v in enumerate(layer_cycle(params, i)):
            colour[v.encode(params)] = position % 2
    for a, b in g.edges():
        assert colour[a] != colour[b]
    assert nx.is_bipartite(nx.Graph(g.edges()))


@pytest.mark.parametrize("n, p", [(4, 1), (8, 2)])
def test_layer_cycles_are_cycles(armchair, n, p):
    g, params = armchair(n, p)
    for i in range(p + 1):
        ring = [v.encode(params) for v in layer_cycle(params, i)]
        assert len(ring) == 2 * n
        for a, b in zip(ring, ring[1:] + ring[:1]):
            assert g.has_edge(a, b)


def test_top_rim_is_last_layer():
    params = TubuleneParams(6, 3)
    assert rim_cycle(params, RimEnd.TOP) == layer_cycle(params, 3)
    assert rim_cycle(params, "bottom") == layer_cycle(params, 0)


@pytest.mark.parametrize("n, p", [(4, 1), (6, 2), (8, 3)])
def test_hexagons_are_six_cycles(armchair, n, p):
    g, params = armchair(n, p)
    faces = hexagons(params)
    assert len(faces) == n * p
    for face in faces:
        assert len(set(face)) == 6
        for a, b in zip(face, face[1:] + face[:1]):
            assert g.has_edge(a, b)
    # every edge lies on one or two faces
    edge_faces = Counter(tuple(sorted(e)) for face in faces for e in zip(face, face[1:] + face[:1]))
    assert set(edge_faces) == set(g.edges())
    assert set(edge_faces.values()) <= {1, 2}


def test_vertex_id_encoding():
    params = TubuleneParams(8, 4)
    v = VertexId(3, 1, 5)
    assert v.encode(params) == 3 * 16 + 8 + 5
    assert VertexId.decode(v.encode(params), params) == v
    assert [VertexId.decode(i, params).encode(params) for i in range(params.vertex_count)] == list(
        range(params.vertex_count)
    )


@pytest.mark.parametrize("vertex", [VertexId(5, 0, 0), VertexId(0, 2, 0), VertexId(0, 0, 8)])
def test_vertex_id_out_of_range(vertex):
    with pytest.raises(ParameterError):
        vertex.encode(TubuleneParams(8, 4))


def test_layer_set():
    params = TubuleneParams(4, 2)
    assert layer_set(params, 1, 1) == frozenset({12, 13, 14, 15})
    with pytest.raises(ParameterError):
        layer_set(params, 3, 0)
    with pytest.raises(ParameterError):
        layer_set(params, 0, 2)


def test_rim_distance_multiset_for_n_8(armchair):
    g, params = armchair(8, 4)
    u = VertexId(0, 0, 0).encode(params)
    row = bfs_distances(g, u)
    others = sorted(row[v] for v in layer_set(params, 0, 0) if v != u)
    assert others == [1, 3, 4, 4, 5, 7, 8]


def test_vertex_directly_above(armchair):
    g, params = armchair(8, 4)
    u = VertexId(0, 0, 0).encode(params)
    row = bfs_distances(g, u)
    top = {v: row[v] for v in layer_set(params, 4, 1)}
    closest = min(top.values())
    assert closest == 2 * 4 + 1
    assert [v for v, d in top.items() if d == closest] == [VertexId(4, 1, 7).encode(params)]


@pytest.mark.parametrize(
    "n, p, kind, layer, expected",
    [(12, 1, 1, 1, 80), (8, 4, 0, 0, 32), (8, 4, 1, 4, 88)],
)
def test_distance_sums_from_bottom_rim(armchair, n, p, kind, layer, expected):
    g, params = armchair(n, p)
    assert distance_sum_to_set(g, 0, layer_set(params, layer, kind)) == expected
