"""Exponential reference answers, computed without the matroid or LP code.

Every spanning tree of G' through E-bar is E-bar plus a spanning tree of the
graph obtained by contracting E-bar, whose vertices are the edges of G.
"""
import logging
from itertools import combinations
from typing import Iterable, Iterator

from django.conf import settings
from django.core.exceptions import ValidationError
from networkx.utils import UnionFind

from trails.services.auxgraph import AuxGraph, build_aux
from trails.utils.multigraph import MultiGraph

logger = logging.getLogger(__name__)

ContractedEdge = tuple[int, int, int]


def contracted_k_graph(aux: AuxGraph) -> tuple[int, tuple[ContractedEdge, ...]]:
    """Vertex count and (aux edge id, a, b) edges of G' with E-bar contracted."""
    edges = tuple((x, s // 2, t // 2) for x in aux.k_edges for s, t in [aux.gprime.edges[x]])
    return aux.graph.m, edges


def _guard(vertex_count, max_vertices):
    limit = settings.ORACLE_MAX_TREE_VERTICES if max_vertices is None else max_vertices
    if vertex_count > limit:
        raise ValidationError('%(count)s contracted vertices exceed the oracle limit of %(limit)s',
                              code='size_guard', params={'count': vertex_count, 'limit': limit})


def _connected(vertex_count, edges):
    if vertex_count <= 1:
        return True
    adjacency = [[] for _ in range(vertex_count)]
    for _, a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for other in adjacency[stack.pop()]:
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return len(seen) == vertex_count


def _trees(vertex_count, edges):
    if vertex_count == 1:
        yield frozenset()
        return
    edges = [(x, a, b) for x, a, b in edges if a != b]
    if not edges:
        return
    (x, a, b), rest = edges[0], edges[1:]

    def relabel(v):
        v = a if v == b else v
        return v - 1 if v > b else v

    contracted = [(y, relabel(s), relabel(t)) for y, s, t in rest]
    for tree in _trees(vertex_count - 1, contracted):
        yield tree | {x}
    if _connected(vertex_count, rest):
        yield from _trees(vertex_count, rest)


def enumerate_spanning_trees(vertex_count: int, edges: Iterable[ContractedEdge],
                             max_vertices: int | None = None) -> Iterator[frozenset]:
    """Each spanning tree exactly once, by contraction and deletion of the first edge."""
    _guard(vertex_count, max_vertices)
    edges = tuple(edges)
    if not _connected(vertex_count, edges):
        return iter(())
    return _trees(vertex_count, edges)


def _fiber_sizes(aux: AuxGraph, tree: frozenset) -> list[list[int]]:
    """Component sizes of (V'_v, T & K_v) for every vertex v."""
    components = UnionFind(range(aux.gprime.n))
    for x in tree:
        components.union(*aux.gprime.edges[x])
    sizes = []
    for slots in aux.part:
        count = {}
        for slot in slots:
            root = components[slot]
            count[root] = count.get(root, 0) + 1
        sizes.append(list(count.values()))
    return sizes


def _aux_trees(g: MultiGraph, max_vertices):
    aux = build_aux(g)
    vertex_count, edges = contracted_k_graph(aux)
    return aux, enumerate_spanning_trees(vertex_count, edges, max_vertices)


def oracle_min_k(g: MultiGraph, max_vertices: int | None = None) -> int:
    aux, trees = _aux_trees(g, max_vertices)
    best = None
    for tree in trees:
        largest = max(max(sizes) for sizes in _fiber_sizes(aux, tree) if sizes)
        best = largest if best is None else min(best, largest)
    return best


def oracle_is_k_trail(g: MultiGraph, k: int, max_vertices: int | None = None) -> bool:
    """Stops at the first spanning tree whose fibers all have at most k slots."""
    if not g.is_connected():
        return False
    aux, trees = _aux_trees(g, max_vertices)
    return any(all(max(sizes, default=0) <= k for sizes in _fiber_sizes(aux, tree)) for tree in trees)


def oracle_feasible_split(g: MultiGraph, mu: Iterable[int], max_vertices: int | None = None) -> bool:
    mu = tuple(mu)
    aux, trees = _aux_trees(g, max_vertices)
    for tree in trees:
        if all(len(sizes) >= mu[v] + 1 for v, sizes in enumerate(_fiber_sizes(aux, tree))):
            return True
    return False


def oracle_has_hamiltonian_path(g: MultiGraph, max_vertices: int | None = None) -> bool:
    """Held-Karp over vertex subsets."""
    _guard(g.n, max_vertices)
    neighbors = [0] * g.n
    for u, v in g.edges:
        if u != v:
            neighbors[u] |= 1 << v
            neighbors[v] |= 1 << u
    full = (1 << g.n) - 1
    ends = {1 << v: 1 << v for v in range(g.n)}
    for size in range(1, g.n):
        for subset in (sum(1 << v for v in chosen) for chosen in combinations(range(g.n), size)):
            reach = ends.get(subset, 0)
            if not reach:
                continue
            for v in range(g.n):
                if reach >> v & 1:
                    for w in range(g.n):
                        if neighbors[v] >> w & 1 and not subset >> w & 1:
                            bigger = subset | 1 << w
                            ends[bigger] = ends.get(bigger, 0) | 1 << w
    return bool(ends.get(full, 0))
