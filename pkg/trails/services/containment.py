"""Turning a contained k-trail into a (k+1)-tree witness of the whole graph.

Edges outside the given subgraph (V, U) are folded in first cycle by cycle,
which keeps the bound at k, and then leaf by leaf along the remaining forest,
which costs at most one unit of degree.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from django.conf import settings
from django.core.exceptions import ValidationError

from trails.services.preimage import (PreimageWitness, balance_degrees, require_valid,
                                      split_into_tree, verify_witness)
from trails.services.recognition import is_k_trail, require_k
from trails.utils.multigraph import MultiGraph, require_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbsorbResult:
    edges: frozenset
    witness: PreimageWitness
    k: int


@dataclass(frozen=True)
class ExtensionResult:
    witness: PreimageWitness
    bound: int
    cycles: tuple[tuple[int, ...], ...] = ()
    attached: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class ContainmentAnswer:
    contains: bool
    edges: frozenset | None = None
    candidates: int = 0

    def __bool__(self):
        return self.contains


def cycle_vertices(g: MultiGraph, cycle: Sequence[int]) -> list[int]:
    """Vertices v_1..v_r of a cycle given by its edges in order; e_i joins v_i and v_i+1."""
    cycle = list(cycle)
    if not cycle or len(set(cycle)) != len(cycle):
        raise ValidationError('A cycle needs distinct edges', code='invalid')
    if len(cycle) == 1:
        u, v = g.edges[cycle[0]]
        if u != v:
            raise ValidationError('A one-edge cycle must be a loop', code='invalid')
        return [u]
    a, b = g.edges[cycle[0]]
    start = a if len(cycle) == 2 or a not in g.edges[cycle[1]] else b
    order = [start]
    for e in cycle:
        u, v = g.edges[e]
        if order[-1] not in (u, v) or u == v:
            raise ValidationError('Edges %(cycle)s do not form a cycle', code='invalid',
                                  params={'cycle': cycle})
        order.append(v if u == order[-1] else u)
    if order[-1] != start or len(set(order[:-1])) != len(cycle):
        raise ValidationError('Edges %(cycle)s do not form a cycle', code='invalid',
                              params={'cycle': cycle})
    return order[:-1]


def _lightest_node(wit_phi, degree, v):
    return min((w for w, image in enumerate(wit_phi) if image == v), key=lambda w: (degree[w], w))


def absorb_cycle(g: MultiGraph, edges: Iterable[int], wit: PreimageWitness,
                 cycle: Sequence[int], k: int) -> AbsorbResult:
    """Fold a cycle of g - U into a k-tree witness of (V, U) without raising k.

    Each cycle vertex v_i gets a fresh node u_i, and the lightest node w_i over
    v_i is joined to u_{i+1} by the preimage of edge e_i.
    """
    require_k(k, least=2)
    edges = frozenset(edges)
    require_valid(g, wit, k, edges)
    if edges & set(cycle):
        raise ValidationError('The cycle must avoid the contained subgraph', code='invalid')
    vertices = cycle_vertices(g, cycle)
    if not wit.is_tree:
        wit = split_into_tree(g, wit, edges)
    degree = list(wit.h.degrees)
    phi = list(wit.phi)
    first_new = len(phi)
    phi.extend(vertices)
    degree.extend([0] * len(vertices))
    h_edges = list(wit.h.edges)
    edge_map = list(wit.edge_map)
    r = len(vertices)
    for i, e in enumerate(cycle):
        w = _lightest_node(phi[:first_new], degree, vertices[i])
        fresh = first_new + (i + 1) % r
        h_edges.append((w, fresh))
        edge_map.append(e)
        degree[w] += 1
        degree[fresh] += 1
    grown = edges | set(cycle)
    witness = PreimageWitness(MultiGraph(len(phi), tuple(h_edges)), tuple(phi), tuple(edge_map))
    witness = balance_degrees(g, witness, grown)
    check = verify_witness(g, witness, k, grown)
    if not check:
        raise RuntimeError(f'cycle absorption broke the bound {k}: {check.reason}')
    logger.debug('absorbed cycle %s, witness now has %d nodes', list(cycle), witness.h.n)
    return AbsorbResult(grown, witness, k)


def shortest_cycle(g: MultiGraph, edge_ids: Iterable[int]) -> tuple[int, ...] | None:
    """Shortest cycle among ``edge_ids``: loops, then parallel pairs, then BFS."""
    edge_ids = sorted(edge_ids)
    for e in edge_ids:
        if g.is_loop(e):
            return (e,)
    seen = {}
    for e in edge_ids:
        pair = frozenset(g.edges[e])
        if pair in seen:
            return seen[pair], e
        seen[pair] = e
    adjacency = [[] for _ in range(g.n)]
    for e in edge_ids:
        u, v = g.edges[e]
        adjacency[u].append((e, v))
        adjacency[v].append((e, u))
    best = None
    for root in range(g.n):
        parent = {root: (None, None)}
        depth = {root: 0}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for e, other in adjacency[node]:
                if e == parent[node][0]:
                    continue
                if other not in parent:
                    parent[other] = (e, node)
                    depth[other] = depth[node] + 1
                    queue.append(other)
                    continue
                length = depth[node] + depth[other] + 1
                if best is not None and length >= len(best):
                    continue
                found = _close_cycle(parent, root, node, other, e)
                if found is not None:
                    best = found
    return best


def _branch(parent, node):
    """Edges and vertices from ``node`` up to the BFS root."""
    edges, vertices = [], [node]
    while parent[node][0] is not None:
        e, node = parent[node]
        edges.append(e)
        vertices.append(node)
    return edges, vertices


def _close_cycle(parent, root, a, b, e):
    left, left_vertices = _branch(parent, a)
    right, right_vertices = _branch(parent, b)
    if set(left_vertices) & set(right_vertices) != {root}:
        return None
    return tuple(left[::-1] + [e] + right)


def extend_to_full_trail(g: MultiGraph, edges: Iterable[int], wit: PreimageWitness,
                         k: int) -> ExtensionResult:
    """(k+1)-tree witness of g from a k-trail witness of the connected spanning (V, U)."""
    require_k(k)
    edges = frozenset(edges)
    require_connected(g)
    if not edges or not g.is_connected(edges):
        raise ValidationError('The contained subgraph must be connected and spanning',
                              code='disconnected')
    require_valid(g, wit, k, edges)
    if len(edges) == g.m:
        return ExtensionResult(wit, k)
    if k == 1:
        # A single edge spans only a two-vertex graph, which is always a 2-trail.
        return ExtensionResult(is_k_trail(g, 2).witness, 2)

    cycles = []
    witness = wit
    while (cycle := shortest_cycle(g, set(range(g.m)) - edges)) is not None:
        absorbed = absorb_cycle(g, edges, witness, cycle, k)
        edges, witness = absorbed.edges, absorbed.witness
        cycles.append(cycle)
    if not witness.is_tree:
        witness = split_into_tree(g, witness, edges)

    phi = list(witness.phi)
    h_edges = list(witness.h.edges)
    edge_map = list(witness.edge_map)
    degree = list(witness.h.degrees)
    remaining = set(range(g.m)) - edges
    attached = set()
    while remaining:
        leaf, e = _forest_leaf(g, remaining)
        other = g.other_end(e, leaf)
        node = _lightest_node(phi, degree, leaf)
        phi.append(other)
        degree.append(1)
        degree[node] += 1
        h_edges.append((node, len(phi) - 1))
        edge_map.append(e)
        attached.add(node)
        remaining.discard(e)
    result = PreimageWitness(MultiGraph(len(phi), tuple(h_edges)), tuple(phi), tuple(edge_map))
    check = verify_witness(g, result, k + 1)
    if not check:
        raise RuntimeError(f'extension broke the bound {k + 1}: {check.reason}')
    logger.info('extended a %d-trail witness by %d cycles and %d leaf edges',
                k, len(cycles), g.m - len(edges))
    return ExtensionResult(result, k + 1, tuple(cycles), frozenset(attached))


def _forest_leaf(g, remaining):
    count = [0] * g.n
    for e in remaining:
        u, v = g.edges[e]
        count[u] += 1
        count[v] += 1
    leaf = min(v for v in range(g.n) if count[v] == 1)
    return leaf, min(e for e in remaining if leaf in g.edges[e])


def bridges(g: MultiGraph) -> frozenset:
    return frozenset(e for e in range(g.m)
                     if not g.is_loop(e) and not g.is_connected(set(range(g.m)) - {e}))


def oracle_contains_k_trail(g: MultiGraph, k: int, max_edges: int | None = None) -> ContainmentAnswer:
    """Exhaustive search for a smallest connected spanning U with (V, U) a k-trail.

    Bridges belong to every candidate, so only the remaining edges are
    enumerated and the guard applies to their number.
    """
    require_k(k)
    max_edges = settings.ORACLE_MAX_EDGES if max_edges is None else max_edges
    if not g.is_connected():
        return ContainmentAnswer(False)
    forced = bridges(g)
    free = sorted(set(range(g.m)) - forced)
    if len(free) > max_edges:
        raise ValidationError('%(count)s free edges exceed the oracle limit of %(limit)s',
                              code='size_guard', params={'count': len(free), 'limit': max_edges})
    candidates = 0
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            chosen = forced | frozenset(extra)
            if not chosen or not g.is_connected(chosen):
                continue
            candidates += 1
            if is_k_trail(g.edge_subgraph(chosen), k):
                return ContainmentAnswer(True, chosen, candidates)
    return ContainmentAnswer(False, None, candidates)
