"""This module defines the undirected graph used throughout tubulene-gp, together with the BFS distance
oracle built on it: single-source distances, distance sums to vertex sets, the Wiener index and the
Wiener index of a vertex subset.

A `Graph` wraps a frozen `networkx.Graph` whose nodes are the ids ``0 .. vertex_count - 1``. All
arithmetic is exact integer arithmetic. Graphs are validated once on construction, so every operation
here may assume a connected, simple, undirected graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import networkx as nx

if TYPE_CHECKING:
    from collections.abc import Iterable


class GraphError(ValueError):
    """Raised for malformed graphs and for vertex ids that do not belong to a graph."""


class Graph:
    """An undirected, simple, connected graph over vertex ids ``0 .. vertex_count - 1``.

    Attributes:
        nx_graph (nx.Graph): The frozen underlying graph.
        vertex_count (int): Number of vertices.
        adjacency (tuple[tuple[int, ...], ...]): Sorted neighbour ids of every vertex.
    """

    def __init__(self, nx_graph: nx.Graph):
        if nx_graph.is_directed() or nx_graph.is_multigraph():
            raise GraphError("Expected a simple undirected graph")
        vertex_count = nx_graph.number_of_nodes()
        if vertex_count < 1:
            raise GraphError("A graph needs at least one vertex")
        if set(nx_graph.nodes) != set(range(vertex_count)):
            raise GraphError(f"Vertex ids must be exactly 0 .. {vertex_count - 1}")
        loops = list(nx.nodes_with_selfloops(nx_graph))
        if loops:
            raise GraphError(f"Self-loop at vertex {loops[0]}")
        if not nx.is_connected(nx_graph):
            reached = len(nx.node_connected_component(nx_graph, 0))
            raise GraphError(f"Graph is disconnected: {reached} of {vertex_count} vertices reachable from 0")

        self.nx_graph = nx.freeze(nx.Graph(nx_graph))
        self.vertex_count = vertex_count
        self.adjacency = tuple(tuple(sorted(self.nx_graph.adj[v])) for v in range(vertex_count))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Creates a graph from an edge list.

        Args:
            vertex_count (int): Number of vertices.
            edges (Iterable[tuple[int, int]]): Undirected edges; each must appear once.

        Returns:
            Graph: The validated graph.

        Raises:
            GraphError: On out-of-range ids, self-loops, repeated edges or a disconnected result.
        """
        graph = nx.Graph()
        graph.add_nodes_from(range(vertex_count))
        for a, b in edges:
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise GraphError(f"Edge ({a}, {b}) refers to a vertex outside [0, {vertex_count})")
            if graph.has_edge(a, b):
                raise GraphError(f"Duplicate edge ({a}, {b})")
            graph.add_edge(a, b)
        return cls(graph)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    @property
    def edge_count(self) -> int:
        return self.nx_graph.number_of_edges()

    def edges(self) -> list[tuple[int, int]]:
        """Returns every edge once as an ``(a, b)`` pair with ``a < b``, lexicographically sorted."""
        return [(a, b) for a, ns in enumerate(self.adjacency) for b in ns if a < b]

    def degree(self, v: int) -> int:
        return self.nx_graph.degree[self.check_vertex(v)]

    def has_edge(self, a: int, b: int) -> bool:
        return self.nx_graph.has_edge(a, b)

    def check_vertex(self, v: int) -> int:
        """Returns `v` unchanged if it is a vertex id of this graph.

        Raises:
            GraphError: If `v` is not a vertex id of this graph.
        """
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.vertex_count:
            raise GraphError(f"Unknown vertex id {v!r} (graph has {self.vertex_count} vertices)")
        return v

    def check_vertices(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.check_vertex(v) for v in s)


@dataclass(frozen=True)
class DistanceRow:
    """Hop counts from `source` to every vertex; ``dist[t]`` is d(source, t)."""

    source: int
    dist: tuple[int, ...]

    def __getitem__(self, target: int) -> int:
        return self.dist[target]

    def total(self) -> int:
        return sum(self.dist)


class DistanceTable:
    """Memo of BFS rows of one graph, keyed by source.

    A table is meant to be owned by a single caller (or worker); it is never shared implicitly between
    operations. Every function below accepts an optional table and builds a throwaway one otherwise.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self._rows: dict[int, DistanceRow] = {}

    def row(self, source: int) -> DistanceRow:
        row = self._rows.get(source)
        if row is None:
            row = bfs_distances(self.graph, source)
            self._rows[source] = row
        return row

    def distance(self, a: int, b: int) -> int:
        return self.row(a)[b]


def ensure_table(g: Graph, table: DistanceTable | None) -> DistanceTable:
    """Returns `table`, or a fresh one when it is None. A table built for another graph is rejected."""
    if table is None:
        return DistanceTable(g)
    if table.graph is not g:
        raise GraphError("Distance table belongs to a different graph")
    return table


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    """Computes the shortest-path hop count from `source` to every vertex of `g`.

    Args:
        g (Graph): The graph.
        source (int): The source vertex id.

    Returns:
        DistanceRow: The distances from `source`.

    Raises:
        GraphError: If `source` is not a vertex of `g`.
    """
    g.check_vertex(source)
    lengths = nx.single_source_shortest_path_length(g.nx_graph, source)
    return DistanceRow(source, tuple(lengths[t] for t in range(g.vertex_count)))


def distance_sum_to_set(g: Graph, x: int, s: Iterable[int], table: DistanceTable | None = None) -> int:
    """Returns d(x, S), the sum of the distances from `x` to every vertex of `s`."""
    g.check_vertex(x)
    targets = g.check_vertices(s)
    row = ensure_table(g, table).row(x)
    return sum(row[y] for y in targets)


def wiener_index(g: Graph, table: DistanceTable | None = None) -> int:
    """Returns the Wiener index W(G): half the sum of the distances over all ordered vertex pairs."""
    table = ensure_table(g, table)
    total = sum(table.row(u).total() for u in range(g.vertex_count))
    assert total % 2 == 0, "ordered distance sum of an undirected graph must be even"
    return total // 2


def wiener_of_subset(g: Graph, s: Iterable[int], table: DistanceTable | None = None) -> int:
    """Returns W(S) for a vertex subset, with distances measured in the whole of `g`."""
    members = sorted(g.check_vertices(s))
    table = ensure_table(g, table)
    total = 0
    for u in members:
        row = table.row(u)
        total += sum(row[v] for v in members)
    assert total % 2 == 0, "ordered distance sum over a subset must be even"
    return total // 2
