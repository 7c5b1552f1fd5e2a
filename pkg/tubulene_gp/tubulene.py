"""This module builds the armchair tubulene graph AT(n, p) and exposes its vertex classes.

AT(n, p) has p + 1 layers of vertices. Every layer i is a cycle of length 2n that runs through the
type-0 vertices ``v^0_{i,j}`` and the type-1 vertices ``v^1_{i,j}`` in the pattern 0, 0, 1, 1: the
cycle order of layer i is ``v^0_{i,0}, v^0_{i,1}, v^1_{i,0}, v^1_{i,1}, v^0_{i,2}, ...``. Type-1 vertices
of layer i are joined to type-0 vertices of layer i + 1. Even ring positions host the "low" hexagon
columns, odd positions the "high" ones.

Vertex ids are encoded layer-major, then kind, then index: ``id = layer * 2n + kind * n + index``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from tubulene_gp.graph_core import Graph


class ParameterError(ValueError):
    """Raised for invalid tubulene parameters, layers or kinds."""


class RimEnd(str, Enum):
    BOTTOM = "bottom"
    TOP = "top"


@dataclass(frozen=True)
class TubuleneParams:
    """Shape of AT(n, p).

    Attributes:
        n (int): Number of vertical hexagon columns. Must be even and at least 2.
        p (int): Number of hexagons in every column. Must be at least 1.
    """

    n: int
    p: int

    def __post_init__(self):
        for name in ("n", "p"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.n < 2 or self.n % 2:
            raise ParameterError(f"n must be an even integer >= 2, got {self.n}")
        if self.p < 1:
            raise ParameterError(f"p must be a positive integer, got {self.p}")

    @property
    def vertex_count(self) -> int:
        return 2 * self.n * (self.p + 1)

    @property
    def edge_count(self) -> int:
        return 3 * self.n * self.p + 2 * self.n


@dataclass(frozen=True, order=True)
class VertexId:
    """Coordinates ``(layer, kind, index)`` of the vertex ``v^kind_{layer,index}``."""

    layer: int
    kind: int
    index: int

    def encode(self, params: TubuleneParams) -> int:
        if not 0 <= self.layer <= params.p:
            raise ParameterError(f"Layer {self.layer} outside [0, {params.p}]")
        if self.kind not in (0, 1):
            raise ParameterError(f"Kind must be 0 or 1, got {self.kind}")
        if not 0 <= self.index < params.n:
            raise ParameterError(f"Index {self.index} outside [0, {params.n})")
        return self.layer * 2 * params.n + self.kind * params.n + self.index

    @classmethod
    def decode(cls, vid: int, params: TubuleneParams) -> VertexId:
        if not 0 <= vid < params.vertex_count:
            raise ParameterError(f"Vertex id {vid} outside [0, {params.vertex_count})")
        layer, rest = divmod(vid, 2 * params.n)
        kind, index = divmod(rest, params.n)
        return cls(layer, kind, index)

    def label(self) -> str:
        return f"v{self.kind}[{self.layer},{self.index}]"


def _vid(params: TubuleneParams, layer: int, kind: int, index: int) -> int:
    return layer * 2 * params.n + kind * params.n + index % params.n


def build_armchair(params: TubuleneParams) -> Graph:
    """Builds AT(n, p).

    Per layer i and column pair q (all second indices mod n):
    ``v^0_{i,2q} ~ v^0_{i,2q+1}``, ``v^1_{i,2q} ~ v^1_{i,2q+1}``, ``v^1_{i,2q} ~ v^0_{i,2q+1}`` and
    ``v^1_{i,2q+1} ~ v^0_{i,2q+2}`` close the layer cycle; ``v^1_{i,2q} ~ v^0_{i+1,2q+1}`` and
    ``v^1_{i,2q+1} ~ v^0_{i+1,2q+2}`` join layer i to layer i + 1.

    Args:
        params (TubuleneParams): The tube shape.

    Returns:
        Graph: A graph with 2n(p+1) vertices and 3np + 2n edges.
    """
    n, p = params.n, params.p
    tube = nx.Graph()
    tube.add_nodes_from(range(params.vertex_count))
    for i in range(p + 1):
        for q in range(n // 2):
            lo, hi = 2 * q, 2 * q + 1
            tube.add_edges_from(
                [
                    (_vid(params, i, 0, lo), _vid(params, i, 0, hi)),
                    (_vid(params, i, 1, lo), _vid(params, i, 1, hi)),
                    (_vid(params, i, 1, lo), _vid(params, i, 0, hi)),
                    (_vid(params, i, 1, hi), _vid(params, i, 0, hi + 1)),
                ]
            )
            if i < p:
                tube.add_edge(_vid(params, i, 1, lo), _vid(params, i + 1, 0, hi))
                tube.add_edge(_vid(params, i, 1, hi), _vid(params, i + 1, 0, hi + 1))

    g = Graph(tube)
    assert g.edge_count == params.edge_count, f"AT({n},{p}) must have {params.edge_count} edges"
    return g


def layer_cycle(params: TubuleneParams, layer: int) -> list[VertexId]:
    """Returns the 2n-cycle of `layer` in adjacency order, starting at ``v^0_{layer,0}``."""
    if not 0 <= layer <= params.p:
        raise ParameterError(f"Layer {layer} outside [0, {params.p}]")
    cycle = []
    for q in range(params.n // 2):
        cycle += [
            VertexId(layer, 0, 2 * q),
            VertexId(layer, 0, 2 * q + 1),
            VertexId(layer, 1, 2 * q),
            VertexId(layer, 1, 2 * q + 1),
        ]
    return cycle


def rim_cycle(params: TubuleneParams, end: RimEnd) -> list[VertexId]:
    """Returns the rim C1 (bottom) or C2 (top) in cyclic adjacency order starting at its ``v^0_{*,0}``."""
    return layer_cycle(params, 0 if RimEnd(end) is RimEnd.BOTTOM else params.p)


def layer_set(params: TubuleneParams, i: int, k: int) -> frozenset[int]:
    """Returns the ids of the vertex class ``V^k_i``.

    Raises:
        ParameterError: If the layer or the kind is out of range.
    """
    if not 0 <= i <= params.p:
        raise ParameterError(f"Layer {i} outside [0, {params.p}]")
    if k not in (0, 1):
        raise ParameterError(f"Kind must be 0 or 1, got {k}")
    return frozenset(_vid(params, i, k, j) for j in range(params.n))


def degree_two_vertices(params: TubuleneParams) -> frozenset[int]:
    """Returns ``V^0_0 ∪ V^1_p``, the vertices of degree 2."""
    return layer_set(params, 0, 0) | layer_set(params, params.p, 1)


def hexagons(params: TubuleneParams) -> list[tuple[int, ...]]:
    """Returns the n·p hexagonal faces, each as its six vertex ids in cyclic order."""
    faces = []
    n = params.n
    for i in range(params.p):
        for q in range(n // 2):
            lo, hi = 2 * q, 2 * q + 1
            faces.append(
                (
                    _vid(params, i, 0, lo),
                    _vid(params, i, 0, hi),
                    _vid(params, i, 1, lo),
                    _vid(params, i + 1, 0, hi),
                    _vid(params, i + 1, 0, lo),
                    _vid(params, i, 1, (lo - 1) % n),
                )
            )
            faces.append(
                (
                    _vid(params, i, 1, lo),
                    _vid(params, i, 1, hi),
                    _vid(params, i + 1, 0, hi + 1),
                    _vid(params, i + 1, 1, hi),
                    _vid(params, i + 1, 1, lo),
                    _vid(params, i + 1, 0, hi),
                )
            )
    return faces
