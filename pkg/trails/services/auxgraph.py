"""The slot graph G' = (V', E-bar + K) of a multigraph.

Edge e = (a, b) of G owns slots ``2e`` (over a) and ``2e + 1`` (over b); aux
edge id ``e`` is the E-bar edge joining them. K-edges follow, numbered
vertex by vertex, each K_v being the clique on the slots over v.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from django.core.exceptions import ValidationError
from networkx.utils import UnionFind

from trails.services.preimage import PreimageWitness, require_tree
from trails.utils.multigraph import MultiGraph, require_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuxGraph:
    graph: MultiGraph
    gprime: MultiGraph
    slot_of: tuple[tuple[int, int], ...]
    part: tuple[tuple[int, ...], ...]
    kpart: tuple[tuple[int, ...], ...]

    @property
    def ebar(self) -> range:
        return range(self.graph.m)

    @property
    def k_edges(self) -> range:
        return range(self.graph.m, self.gprime.m)

    def is_ebar(self, aux_edge: int) -> bool:
        return aux_edge < self.graph.m

    @cached_property
    def owner(self) -> dict[int, int]:
        """Vertex v of G for every K_v edge."""
        return {x: v for v, ids in enumerate(self.kpart) for x in ids}

    @cached_property
    def k_edge_between(self) -> dict[frozenset, int]:
        return {frozenset(self.gprime.edges[x]): x for x in self.k_edges}

    def slot_vertex(self, slot: int) -> int:
        return self.slot_of[slot][0]


@dataclass(frozen=True)
class AuxTree:
    edges: frozenset
    contains_ebar: bool = True


def build_aux(g: MultiGraph) -> AuxGraph:
    require_connected(g)
    slot_of = []
    part = [[] for _ in range(g.n)]
    aux_edges = []
    for e, (a, b) in enumerate(g.edges):
        slot_of.extend([(a, e), (b, e)])
        part[a].append(2 * e)
        part[b].append(2 * e + 1)
        aux_edges.append((2 * e, 2 * e + 1))
    kpart = []
    for slots in part:
        ids = []
        for s, t in combinations(slots, 2):
            ids.append(len(aux_edges))
            aux_edges.append((s, t))
        kpart.append(tuple(ids))
    gprime = MultiGraph(2 * g.m, tuple(aux_edges))
    logger.debug('aux graph: %d slots, %d E-bar edges, %d K edges',
                 gprime.n, g.m, gprime.m - g.m)
    return AuxGraph(g, gprime, tuple(slot_of), tuple(tuple(p) for p in part), tuple(kpart))


def _require_spanning_tree(aux: AuxGraph, t: AuxTree):
    n = aux.gprime.n
    if len(t.edges) != n - 1 or any(not 0 <= x < aux.gprime.m for x in t.edges):
        raise ValidationError('Expected %(size)s aux edges in a spanning tree, got %(count)s',
                              code='invalid', params={'size': n - 1, 'count': len(t.edges)})
    forest = UnionFind(range(n))
    for x in t.edges:
        s, r = aux.gprime.edges[x]
        if forest[s] == forest[r]:
            raise ValidationError('Aux edge %(x)s closes a cycle', code='invalid', params={'x': x})
        forest.union(s, r)
    if t.contains_ebar and not set(aux.ebar) <= t.edges:
        raise ValidationError('The tree must contain every E-bar edge', code='invalid')


def tree_to_witness(aux: AuxGraph, t: AuxTree) -> PreimageWitness:
    """Contract the components of (V'_v, T & K_v) into the nodes of H_T."""
    _require_spanning_tree(aux, t)
    components = UnionFind(range(aux.gprime.n))
    for x in t.edges:
        if not aux.is_ebar(x):
            components.union(*aux.gprime.edges[x])
    first_slot = {}
    for slot in range(aux.gprime.n):
        first_slot.setdefault(components[slot], slot)
    order = sorted(first_slot.values())
    node_of_root = {components[slot]: i for i, slot in enumerate(order)}
    phi = tuple(aux.slot_vertex(slot) for slot in order)
    h_edges, edge_map = [], []
    for e in aux.ebar:
        if e in t.edges:
            h_edges.append((node_of_root[components[2 * e]], node_of_root[components[2 * e + 1]]))
            edge_map.append(e)
    return PreimageWitness(MultiGraph(len(order), tuple(h_edges)), phi, tuple(edge_map))


def witness_to_tree(aux: AuxGraph, wit: PreimageWitness) -> AuxTree:
    """Spanning tree T with T & E-bar = E-bar whose contraction gives back ``wit``."""
    g = aux.graph
    require_tree(g, wit)
    slots_of_node = [[] for _ in range(wit.h.n)]
    for f, (a, b) in enumerate(wit.h.edges):
        e = wit.edge_map[f]
        first, _ = g.edges[e]
        if wit.phi[a] == first:
            slots_of_node[a].append(2 * e)
            slots_of_node[b].append(2 * e + 1)
        else:
            slots_of_node[b].append(2 * e)
            slots_of_node[a].append(2 * e + 1)
    tree = set(aux.ebar)
    for slots in slots_of_node:
        slots.sort()
        tree.update(aux.k_edge_between[frozenset(pair)] for pair in zip(slots, slots[1:]))
    return AuxTree(frozenset(tree), True)


def aux_dot_clusters(aux: AuxGraph) -> dict[str, list[int]]:
    return {f'v{v}': list(slots) for v, slots in enumerate(aux.part)}


def aux_slot_labels(aux: AuxGraph) -> dict[int, str]:
    return {slot: f'{v}_e{e}' for slot, (v, e) in enumerate(aux.slot_of)}
