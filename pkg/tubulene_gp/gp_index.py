"""This module computes the Graovac-Pisanski (modified Wiener) index from its definition and from an
orbit partition.

For a graph G with automorphism group Aut(G),
``GP(G) = |V| / (2 |Aut(G)|) · Σ_u Σ_α d(u, α(u))``. When the orbits of Aut(G) are known the same value
is ``|V| · Σ_i W(V_i) / |V_i|``. Results are exact rationals; for AT(n, p) they are always integers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from tubulene_gp.graph_core import GraphError, ensure_table, wiener_of_subset

if TYPE_CHECKING:
    from collections.abc import Sequence

    from tubulene_gp.graph_core import DistanceTable, Graph
    from tubulene_gp.symmetry import Automorphism, OrbitPartition

ExactRational = Fraction


def gp_by_definition(
    g: Graph, auts: Sequence[Automorphism], table: DistanceTable | None = None
) -> ExactRational:
    """Computes GP(G) by summing the displacement of every vertex under every automorphism.

    Args:
        g (Graph): The graph.
        auts (Sequence[Automorphism]): The full automorphism group of `g`, identity included.
        table (DistanceTable | None): Optional distance memo for `g`.

    Returns:
        ExactRational: The Graovac-Pisanski index.

    Raises:
        GraphError: If `auts` is empty or holds a permutation of the wrong size.
    """
    if not auts:
        raise GraphError("The automorphism group cannot be empty")
    table = ensure_table(g, table)

    displacement = 0
    for alpha in auts:
        if len(alpha) != g.vertex_count:
            raise GraphError(f"Automorphism acts on {len(alpha)} vertices, graph has {g.vertex_count}")
        displacement += sum(table.distance(u, alpha(u)) for u in range(g.vertex_count))
    return Fraction(g.vertex_count * displacement, 2 * len(auts))


def _check_cover(g: Graph, partition: OrbitPartition):
    if not partition.covers(g.vertex_count):
        raise GraphError(f"Orbit partition does not cover the {g.vertex_count} vertices of the graph")


def gp_by_orbits(g: Graph, partition: OrbitPartition, table: DistanceTable | None = None) -> ExactRational:
    """Computes GP(G) as ``|V| · Σ_i W(V_i) / |V_i|`` from the orbits of Aut(G).

    Raises:
        GraphError: If `partition` does not cover the vertex set of `g`.
    """
    _check_cover(g, partition)
    table = ensure_table(g, table)
    per_orbit = sum((Fraction(wiener_of_subset(g, orbit, table), len(orbit)) for orbit in partition), Fraction(0))
    return g.vertex_count * per_orbit


def w_prime(g: Graph, partition: OrbitPartition, table: DistanceTable | None = None) -> int:
    """Returns W'(G), the sum of the Wiener indices of the orbits.

    On AT(n, p) all orbits have size 2n, so ``GP = (p + 1) · W'``.

    Raises:
        GraphError: If `partition` does not cover the vertex set of `g`.
    """
    _check_cover(g, partition)
    table = ensure_table(g, table)
    return sum(wiener_of_subset(g, orbit, table) for orbit in partition)
