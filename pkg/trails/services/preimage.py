"""Homomorphic-preimage witnesses and the transformations between them.

A witness for G = (V, E) is a connected graph H = (W, F), an onto map
``phi: W -> V`` and a bijection ``edge_map: F -> E`` such that every H-edge
{w, w'} is sent to a G-edge with endpoints {phi(w), phi(w')}. Its bound is
the maximum degree of H.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from django.core.exceptions import ValidationError

from trails.utils.multigraph import MultiGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreimageWitness:
    h: MultiGraph
    phi: tuple[int, ...]
    edge_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'phi', tuple(self.phi))
        object.__setattr__(self, 'edge_map', tuple(self.edge_map))

    @property
    def max_degree(self) -> int:
        return self.h.max_degree if self.h.m else 0

    @property
    def is_tree(self) -> bool:
        return self.h.m == self.h.n - 1 and self.h.is_connected()

    def fiber(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, image in enumerate(self.phi) if image == v)

    def multiplicities(self, n: int) -> tuple[int, ...]:
        counts = [0] * n
        for image in self.phi:
            counts[image] += 1
        return tuple(counts)


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of ``verify_witness``; falsy when a rule is broken."""

    ok: bool
    reason: str = ''
    detail: str = ''

    def __bool__(self):
        return self.ok


def identity_witness(g: MultiGraph) -> PreimageWitness:
    return PreimageWitness(g, tuple(range(g.n)), tuple(range(g.m)))


def verify_witness(g: MultiGraph, wit: PreimageWitness, k: int | None = None,
                   edges: Iterable[int] | None = None) -> WitnessCheck:
    """Check every witness rule, and max degree <= k unless k is None.

    ``edges`` restricts the image to the spanning subgraph (V, edges).
    """
    h = wit.h
    if len(wit.phi) != h.n or any(not 0 <= image < g.n for image in wit.phi):
        return WitnessCheck(False, 'bad_phi', 'phi must send each of the %d nodes into V' % h.n)
    missing = set(range(g.n)) - set(wit.phi)
    if missing:
        return WitnessCheck(False, 'phi_not_onto', 'no node over vertices %s' % sorted(missing))
    expected = set(range(g.m)) if edges is None else set(edges)
    if len(wit.edge_map) != h.m or len(set(wit.edge_map)) != h.m or set(wit.edge_map) != expected:
        return WitnessCheck(False, 'edge_map_not_bijective',
                            'edge_map must be a bijection onto %d edges' % len(expected))
    for f, (a, b) in enumerate(h.edges):
        e = wit.edge_map[f]
        if sorted((wit.phi[a], wit.phi[b])) != sorted(g.edges[e]):
            return WitnessCheck(False, 'edge_endpoint_mismatch',
                                'H-edge %d does not map onto the endpoints of edge %d' % (f, e))
    if not h.is_connected():
        return WitnessCheck(False, 'disconnected', 'H is not connected')
    if k is not None and wit.max_degree > k:
        return WitnessCheck(False, 'degree_exceeded',
                            'H has degree %d above the bound %d' % (wit.max_degree, k))
    return WitnessCheck(True)


def require_valid(g: MultiGraph, wit: PreimageWitness, k: int | None = None,
                  edges: Iterable[int] | None = None):
    check = verify_witness(g, wit, k, edges)
    if not check:
        raise ValidationError('Invalid witness (%(reason)s): %(detail)s', code='witness',
                              params={'reason': check.reason, 'detail': check.detail})


def require_tree(g: MultiGraph, wit: PreimageWitness, edges: Iterable[int] | None = None):
    require_valid(g, wit, edges=edges)
    if not wit.is_tree:
        raise ValidationError('The witness graph H is not a tree', code='witness')


def canonical_key(wit: PreimageWitness) -> tuple:
    """Equal for witnesses that differ only by a renaming of H-nodes."""
    incident = [[] for _ in range(wit.h.n)]
    for f, (a, b) in enumerate(wit.h.edges):
        incident[a].append(wit.edge_map[f])
        incident[b].append(wit.edge_map[f])
    return tuple(sorted((wit.phi[w], tuple(sorted(incident[w]))) for w in range(wit.h.n)))


def _dfs_tree_edges(h: MultiGraph) -> set[int]:
    adjacency = [[] for _ in range(h.n)]
    for f, (a, b) in enumerate(h.edges):
        if a != b:
            adjacency[a].append((f, b))
            adjacency[b].append((f, a))
    seen = {0}
    tree = set()
    stack = [(0, iter(sorted(adjacency[0])))]
    while stack:
        node, neighbors = stack[-1]
        for f, other in neighbors:
            if other not in seen:
                seen.add(other)
                tree.add(f)
                stack.append((other, iter(sorted(adjacency[other]))))
                break
        else:
            stack.pop()
    return tree


def split_into_tree(g: MultiGraph, wit: PreimageWitness,
                    edges: Iterable[int] | None = None) -> PreimageWitness:
    """Cut every cycle of H by giving a non-tree edge its own fresh end node.

    A non-tree edge {w1, w2} becomes {w1, x} with phi(x) = phi(w2); the degree
    of w2 drops by one and x is a leaf, so the bound never grows.
    """
    require_valid(g, wit, edges=edges)
    if wit.is_tree:
        return wit
    tree = _dfs_tree_edges(wit.h)
    phi = list(wit.phi)
    h_edges = list(wit.h.edges)
    for f in range(wit.h.m):
        if f in tree:
            continue
        w1, w2 = h_edges[f]
        phi.append(phi[w2])
        h_edges[f] = (w1, len(phi) - 1)
    logger.debug('split %d cycle edges off a %d-node witness', len(phi) - wit.h.n, wit.h.n)
    return PreimageWitness(MultiGraph(len(phi), tuple(h_edges)), tuple(phi), wit.edge_map)


def merge_to_multiplicity(g: MultiGraph, wit: PreimageWitness,
                          target: Iterable[int]) -> PreimageWitness:
    require_valid(g, wit)
    target = tuple(target)
    current = wit.multiplicities(g.n)
    if len(target) != g.n or any(not 1 <= t <= c for t, c in zip(target, current)):
        raise ValidationError('Target multiplicities %(target)s must lie between 1 and %(current)s',
                              code='invalid', params={'target': target, 'current': current})
    into = list(range(wit.h.n))
    for v in range(g.n):
        fiber = wit.fiber(v)
        keep = fiber[target[v] - 1]
        for w in fiber[target[v]:]:
            into[w] = keep
    survivors = sorted(set(into))
    renumber = {w: i for i, w in enumerate(survivors)}
    h_edges = tuple((renumber[into[a]], renumber[into[b]]) for a, b in wit.h.edges)
    phi = tuple(wit.phi[w] for w in survivors)
    return PreimageWitness(MultiGraph(len(survivors), h_edges), phi, wit.edge_map)


def _path_neighbor(adjacency, source, target):
    """Neighbor of ``source`` on the unique tree path towards ``target``."""
    parent = {target: None}
    queue = deque([target])
    while queue:
        node = queue.popleft()
        if node == source:
            return parent[node]
        for _, other in adjacency[node]:
            if other not in parent:
                parent[other] = node
                queue.append(other)
    return None


def _violation(n, phi, h_edges, node_count):
    degree = [0] * node_count
    adjacency = [[] for _ in range(node_count)]
    for f, (a, b) in enumerate(h_edges):
        degree[a] += 1
        degree[b] += 1
        adjacency[a].append((f, b))
        adjacency[b].append((f, a))
    fibers = [[] for _ in range(n)]
    for w, image in enumerate(phi):
        fibers[image].append(w)
    for v in range(n):
        for w in fibers[v]:
            for w2 in fibers[v]:
                if degree[w] < degree[w2] + 2:
                    continue
                step = _path_neighbor(adjacency, w, w2)
                f, u = min(((f, u) for f, u in adjacency[w] if u != step), key=lambda item: item[1])
                return v, w, w2, u, f
    return None


def balance_degrees(g: MultiGraph, wit: PreimageWitness,
                    edges: Iterable[int] | None = None) -> PreimageWitness:
    """Even out degrees inside every fiber of a tree witness.

    Moves an edge {u, w} to {u, w'} while some w, w' over the same vertex have
    deg(w) >= deg(w') + 2; u is the smallest neighbor of w off the w-w' path.
    """
    require_tree(g, wit, edges)
    h_edges = list(wit.h.edges)
    potential = sum(d * d for d in wit.h.degrees)
    budget = potential
    moves = 0
    while (found := _violation(g.n, wit.phi, h_edges, wit.h.n)) is not None:
        v, w, w2, u, f = found
        h_edges[f] = (u, w2)
        moves += 1
        after = MultiGraph(wit.h.n, tuple(h_edges))
        new_potential = sum(d * d for d in after.degrees)
        assert new_potential < potential and moves <= budget, 'degree balancing stopped making progress'
        potential = new_potential
        logger.debug('balance: vertex %d, moved edge %d from node %d to node %d', v, f, w, w2)
    if not moves:
        return wit
    logger.debug('balanced witness in %d moves', moves)
    return PreimageWitness(MultiGraph(wit.h.n, tuple(h_edges)), wit.phi, wit.edge_map)
