"""This module enumerates the automorphism group of AT(n, p) and the orbits of its natural action.

Automorphisms are found by extending rim maps: every isomorphism from the bottom rim C1 onto C1 or
onto the top rim C2 that respects vertex degrees extends, layer by layer, to exactly one automorphism
of the whole tube. A backtracking search over all vertex permutations is kept as an independent oracle
for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Optional

from tubulene_gp.config import DEFAULT_MAX_BRUTE_VERTICES
from tubulene_gp.graph_core import DistanceTable, GraphError
from tubulene_gp.tubulene import RimEnd, VertexId, degree_two_vertices, layer_set, rim_cycle

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

    from tubulene_gp.graph_core import Graph
    from tubulene_gp.tubulene import TubuleneParams

# Vertices whose images are checked by distance during backtracking, on top of adjacency.
_ANCHORS = 4


class ExtensionError(RuntimeError):
    """Raised when a rim map does not extend to an automorphism. Never expected for degree-preserving maps."""


class OracleRefusedError(RuntimeError):
    """Raised when a graph is too large for the brute-force automorphism search."""


@dataclass(frozen=True)
class Automorphism:
    """A vertex permutation stored as a dense image array: ``image[u]`` is the image of vertex `u`."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError("Automorphism image must be a permutation of the vertex ids")

    @classmethod
    def identity(cls, size: int) -> Automorphism:
        return cls(tuple(range(size)))

    def __call__(self, u: int) -> int:
        return self.image[u]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, other: Automorphism) -> Automorphism:
        """Returns ``self ∘ other``, i.e. `other` applied first."""
        return Automorphism(tuple(self.image[x] for x in other.image))

    def inverse(self) -> Automorphism:
        inv = [0] * len(self.image)
        for u, x in enumerate(self.image):
            inv[x] = u
        return Automorphism(tuple(inv))

    def is_identity(self) -> bool:
        return all(u == x for u, x in enumerate(self.image))

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power = power.compose(self)
            k += 1
        return k

    def preserves_edges(self, g: Graph) -> bool:
        if len(self.image) != g.vertex_count:
            return False
        return all(g.has_edge(self.image[a], self.image[b]) for a, b in g.edges())

    def cycles(self) -> list[tuple[int, ...]]:
        """Returns the non-trivial cycles, each starting at its smallest vertex, sorted by that vertex."""
        seen = [False] * len(self.image)
        result = []
        for start in range(len(self.image)):
            if seen[start] or self.image[start] == start:
                continue
            cycle, x = [], start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.image[x]
            result.append(tuple(cycle))
        return result


@dataclass(frozen=True)
class RimMap:
    """An isomorphism from the bottom rim C1 onto C1 or C2.

    Attributes:
        domain (tuple[int, ...]): The ids of C1 in cyclic order.
        codomain_end (RimEnd): Which rim the map lands on.
        images (tuple[int, ...]): ``images[t]`` is the image of ``domain[t]``.
        shift (int): Rim position that ``domain[0]`` is sent to.
        reflected (bool): Whether the map reverses the cyclic orientation.
    """

    domain: tuple[int, ...]
    codomain_end: RimEnd
    images: tuple[int, ...]
    shift: int
    reflected: bool


class OrbitPartition:
    """Disjoint, non-empty vertex sets, kept in canonical order (by smallest member).

    Two partitions compare equal iff they consist of the same sets.
    """

    def __init__(self, orbits: Iterable[Iterable[int]]):
        canonical = sorted((frozenset(o) for o in orbits), key=_smallest)
        seen: set[int] = set()
        for orbit in canonical:
            if seen & orbit:
                raise ValueError("Orbits must be pairwise disjoint")
            seen |= orbit
        self.orbits: tuple[frozenset[int], ...] = tuple(canonical)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OrbitPartition) and self.orbits == other.orbits

    def __hash__(self) -> int:
        return hash(self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def __repr__(self) -> str:
        return f"OrbitPartition({[sorted(o) for o in self.orbits]})"

    def covers(self, vertex_count: int) -> bool:
        return sum(len(o) for o in self.orbits) == vertex_count and all(
            0 <= v < vertex_count for o in self.orbits for v in o
        )

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def _smallest(orbit: frozenset[int]) -> int:
    if not orbit:
        raise ValueError("Orbits must be non-empty")
    return min(orbit)


@dataclass(frozen=True)
class GroupStructureReport:
    """Outcome of the search for ``D_{n/2} × Z_2`` and ``D_n`` presentations.

    When `satisfies_dihedral_times_z2` is true, every group element is uniquely ``r^a s^b z^c`` with
    ``a < n/2`` and ``b, c ∈ {0, 1}``, where `rotation` has order n/2, `reflection` inverts it and
    `central` is an involution commuting with both.

    Independently, `is_dihedral_of_order_2n` records whether the group is ``D_n``: `full_rotation` has
    order n and, with the involution `full_reflection` inverting it, generates every element. For
    n = 2 (mod 4) the two presentations describe isomorphic groups. When 4 | n the group has elements of
    order n, which ``D_{n/2} × Z_2`` does not.
    """

    order: int
    satisfies_dihedral_times_z2: bool
    rotation: Optional[Automorphism] = None
    reflection: Optional[Automorphism] = None
    central: Optional[Automorphism] = None
    is_dihedral_of_order_2n: bool = False
    full_rotation: Optional[Automorphism] = None
    full_reflection: Optional[Automorphism] = None


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def candidate_rim_maps(params: TubuleneParams) -> list[RimMap]:
    """Enumerates the degree-preserving isomorphisms from C1 onto C1 and onto C2.

    All 4n symmetries of a 2n-cycle are tried per codomain; only those sending degree-2 vertices onto
    degree-2 vertices are kept, which leaves n maps per codomain.
    """
    domain = tuple(v.encode(params) for v in rim_cycle(params, RimEnd.BOTTOM))
    size = len(domain)
    degree_two = degree_two_vertices(params)

    maps = []
    for end in (RimEnd.BOTTOM, RimEnd.TOP):
        target = [v.encode(params) for v in rim_cycle(params, end)]
        for reflected in (False, True):
            for shift in range(size):
                step = -1 if reflected else 1
                images = tuple(target[(shift + step * t) % size] for t in range(size))
                if all((x in degree_two) == (y in degree_two) for x, y in zip(domain, images)):
                    maps.append(RimMap(domain, end, images, shift, reflected))

    assert len(maps) == 2 * params.n, f"expected {2 * params.n} degree-preserving rim maps, found {len(maps)}"
    return maps


def extend_rim_map(g: Graph, params: TubuleneParams, phi: RimMap) -> Automorphism:
    """Extends a rim map to the unique automorphism of AT(n, p) that agrees with it on C1.

    Layer by layer, every vertex x of ``V^0_i`` hangs below a vertex y of ``V^1_{i-1}`` whose two other
    neighbours are already mapped; x goes to the third neighbour of y's image. ``V^1_i`` then follows from
    ``V^0_i`` the same way.

    Raises:
        ExtensionError: If the propagation hits a conflict or the result is not an automorphism.
    """
    if g.vertex_count != params.vertex_count:
        raise ExtensionError(
            f"Graph has {g.vertex_count} vertices, AT({params.n},{params.p}) has {params.vertex_count}"
        )

    image = [-1] * g.vertex_count
    for x, y in zip(phi.domain, phi.images):
        image[x] = y

    def propagate(x: int, below: frozenset[int]):
        anchors = [y for y in g.adjacency[x] if y in below]
        if len(anchors) != 1:
            raise ExtensionError(f"{_label(x, params)} has {len(anchors)} neighbours in the layer it hangs from")
        y = anchors[0]
        others = [w for w in g.adjacency[y] if w != x]
        if len(others) != 2 or any(image[w] < 0 for w in others):
            raise ExtensionError(f"{_label(y, params)} does not determine the image of {_label(x, params)}")
        fy = image[y]
        taken = {image[w] for w in others}
        choices = [w for w in g.adjacency[fy] if w not in taken]
        if len(g.adjacency[fy]) != 3 or len(choices) != 1:
            raise ExtensionError(f"Image of {_label(y, params)} has no unique free neighbour")
        if image[x] >= 0:
            raise ExtensionError(f"{_label(x, params)} is mapped twice")
        image[x] = choices[0]

    for i in range(1, params.p + 1):
        for x in sorted(layer_set(params, i, 0)):
            propagate(x, layer_set(params, i - 1, 1))
        for x in sorted(layer_set(params, i, 1)):
            propagate(x, layer_set(params, i, 0))

    which = f"rim map (shift={phi.shift}, reflected={phi.reflected})"
    try:
        alpha = Automorphism(tuple(image))
    except ValueError as e:
        raise ExtensionError(f"Extension of {which} is not a bijection") from e
    if not alpha.preserves_edges(g):
        raise ExtensionError(f"Extension of {which} breaks an edge")
    return alpha


def _label(vid: int, params: TubuleneParams) -> str:
    return VertexId.decode(vid, params).label()


def automorphism_group(g: Graph, params: TubuleneParams) -> list[Automorphism]:
    """Returns the 2n automorphisms of AT(n, p), obtained by extending every candidate rim map.

    Raises:
        ExtensionError: If a rim map fails to extend or two rim maps yield the same automorphism.
    """
    auts = [extend_rim_map(g, params, phi) for phi in candidate_rim_maps(params)]
    if len(set(auts)) != len(auts):
        raise ExtensionError("Distinct rim maps extended to the same automorphism")
    return sorted(auts, key=lambda a: a.image)


def brute_force_automorphisms(g: Graph, cap: int = DEFAULT_MAX_BRUTE_VERTICES) -> list[Automorphism]:
    """Finds every automorphism of `g` by backtracking.

    Vertices are assigned in BFS order so that each vertex after the first has an assigned neighbour;
    its candidates are the free neighbours of that neighbour's image with the same distance profile,
    adjacent to the images of all assigned neighbours and at matching distances from a few anchors.

    Raises:
        OracleRefusedError: If `g` has more than `cap` vertices.
    """
    size = g.vertex_count
    if size > cap:
        raise OracleRefusedError(f"Brute-force search refused: {size} vertices exceeds the cap of {cap}")

    table = DistanceTable(g)
    profiles = []
    for u in range(size):
        row = table.row(u)
        histogram = [0] * (max(row.dist) + 1)
        for d in row.dist:
            histogram[d] += 1
        profiles.append(tuple(histogram))

    order = _bfs_order(g)
    position = {v: k for k, v in enumerate(order)}
    parent = [
        min((w for w in g.adjacency[v] if position[w] < position[v]), key=position.__getitem__, default=-1)
        for v in range(size)
    ]
    anchors = order[:_ANCHORS]

    image = [-1] * size
    used = [False] * size

    def candidates(k: int) -> list[int]:
        v = order[k]
        pool = range(size) if k == 0 else g.adjacency[image[parent[v]]]
        result = []
        for c in pool:
            if used[c] or profiles[c] != profiles[v]:
                continue
            if any(image[w] >= 0 and not g.has_edge(c, image[w]) for w in g.adjacency[v]):
                continue
            if any(table.distance(a, v) != table.distance(image[a], c) for a in anchors if image[a] >= 0):
                continue
            result.append(c)
        result.reverse()
        return result

    found = []
    stack = [candidates(0)]
    while stack:
        k = len(stack) - 1
        v = order[k]
        if image[v] >= 0:
            used[image[v]] = False
            image[v] = -1
        if not stack[-1]:
            stack.pop()
            continue
        c = stack[-1].pop()
        image[v] = c
        used[c] = True
        if k + 1 == size:
            alpha = Automorphism(tuple(image))
            assert alpha.preserves_edges(g), "backtracking produced a non-automorphism"
            found.append(alpha)
            continue
        stack.append(candidates(k + 1))

    return sorted(found, key=lambda a: a.image)


def _bfs_order(g: Graph) -> list[int]:
    row = DistanceTable(g).row(0)
    return sorted(range(g.vertex_count), key=lambda v: (row[v], v))


def orbits_from_action(auts: Sequence[Automorphism]) -> OrbitPartition:
    """Returns the orbits of the natural action of `auts` on the vertex set.

    Raises:
        GraphError: If `auts` is empty.
    """
    if not auts:
        raise GraphError("At least one automorphism is required")
    uf = UnionFind(len(auts[0]))
    for alpha in auts:
        for u, x in enumerate(alpha.image):
            uf.union(u, x)
    return OrbitPartition(uf.classes())


def theorem_orbits(params: TubuleneParams) -> OrbitPartition:
    """Returns the p + 1 orbits of Aut(AT(n, p)), each of size 2n.

    ``O^0_i = V^0_i ∪ V^1_{p-i}`` and ``O^1_i = V^1_i ∪ V^0_{p-i}`` for ``i < (p+1)/2``; for even p the
    middle layer forms one more orbit ``V^0_{p/2} ∪ V^1_{p/2}``.
    """
    p = params.p
    last = (p - 1) // 2 if p % 2 else (p - 2) // 2
    orbits = []
    for i in range(last + 1):
        orbits.append(layer_set(params, i, 0) | layer_set(params, p - i, 1))
        orbits.append(layer_set(params, i, 1) | layer_set(params, p - i, 0))
    if p % 2 == 0:
        orbits.append(layer_set(params, p // 2, 0) | layer_set(params, p // 2, 1))
    return OrbitPartition(orbits)


def rotation_automorphism(params: TubuleneParams, steps: int = 1) -> Automorphism:
    """Returns the shift ``v^k_{i,j} -> v^k_{i,j+2·steps}`` by whole column pairs."""
    image = []
    for vid in range(params.vertex_count):
        v = VertexId.decode(vid, params)
        image.append(VertexId(v.layer, v.kind, (v.index + 2 * steps) % params.n).encode(params))
    return Automorphism(tuple(image))


def _powers(r: Automorphism, identity: Automorphism, count: int) -> list[Automorphism]:
    powers = [identity]
    for _ in range(count - 1):
        powers.append(powers[-1].compose(r))
    return powers


def _dihedral_witnesses(
    auts: Sequence[Automorphism], identity: Automorphism, m: int
) -> Iterator[tuple[Automorphism, Automorphism, set[Automorphism]]]:
    """Yields ``(r, s, elements of <r, s>)`` for every dihedral subgroup ``D_m`` of `auts`."""
    involutions = [a for a in auts if a != identity and a.compose(a) == identity]
    for r in (a for a in auts if a.order() == m):
        powers = _powers(r, identity, m)
        rotations = set(powers)
        r_inv = r.inverse()
        for s in involutions:
            if s in rotations or s.compose(r).compose(s) != r_inv:
                continue
            dihedral = rotations | {x.compose(s) for x in powers}
            if len(dihedral) == 2 * m:
                yield r, s, dihedral


def group_structure(auts: Sequence[Automorphism], params: TubuleneParams) -> GroupStructureReport:
    """Searches `auts` for witnesses of ``D_{n/2} × Z_2`` and of ``D_n``. Negative reports are valid outcomes."""
    order = len(auts)
    n = params.n
    if order != 2 * n:
        return GroupStructureReport(order, False)

    elements = set(auts)
    identity = Automorphism.identity(len(auts[0]))
    if identity not in elements:
        return GroupStructureReport(order, False)

    full = next((w for w in _dihedral_witnesses(auts, identity, n) if w[2] == elements), None)
    full_rotation, full_reflection = (full[0], full[1]) if full is not None else (None, None)
    report = GroupStructureReport(order, False, None, None, None, full is not None, full_rotation, full_reflection)

    involutions = [a for a in auts if a != identity and a.compose(a) == identity]
    for r, s, dihedral in _dihedral_witnesses(auts, identity, n // 2):
        for z in involutions:
            if z in dihedral or z.compose(r) != r.compose(z) or z.compose(s) != s.compose(z):
                continue
            products = dihedral | {x.compose(z) for x in dihedral}
            if len(products) == 2 * n and products == elements:
                return replace(report, satisfies_dihedral_times_z2=True, rotation=r, reflection=s, central=z)

    return report
