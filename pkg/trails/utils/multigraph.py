from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx
from django.core.exceptions import ValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices 0..n-1.

    Edge ids are positions in ``edges``. Parallel edges keep their own ids and a
    loop is a single edge whose endpoints coincide.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, 'edges', tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 2:
            raise ValidationError('A graph needs at least 2 vertices, got %(n)s',
                                  code='invalid', params={'n': self.n})
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError('Edge %(e)s has an endpoint outside 0..%(last)s',
                                      code='invalid', params={'e': e, 'last': self.n - 1})

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        counts = Counter()
        for u, v in self.edges:
            counts[u] += 1
            counts[v] += 1
        return tuple(counts[v] for v in range(self.n))

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids at each vertex, a loop listed once."""
        at = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            at[u].append(e)
            if v != u:
                at[v].append(e)
        return tuple(tuple(ids) for ids in at)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValidationError('Vertex %(v)s is out of range 0..%(last)s',
                                  code='invalid', params={'v': v, 'last': self.n - 1})
        return self.degrees[v]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def to_networkx(self, edge_ids: Iterable[int] | None = None) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        ids = range(self.m) if edge_ids is None else edge_ids
        for e in ids:
            u, v = self.edges[e]
            graph.add_edge(u, v, key=e)
        return graph

    def is_connected(self, edge_ids: Iterable[int] | None = None) -> bool:
        """True when the edges (all of them, or ``edge_ids``) join every vertex."""
        return nx.is_connected(self.to_networkx(edge_ids))

    def edge_subgraph(self, edge_ids: Iterable[int]) -> 'MultiGraph':
        """Spanning subgraph (V, U) with edges renumbered in ascending id order."""
        return MultiGraph(self.n, tuple(self.edges[e] for e in sorted(edge_ids)))


@dataclass(frozen=True)
class WeightedMultiGraph:
    graph: MultiGraph
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(int(w) for w in self.weights))
        if len(self.weights) != self.graph.m:
            raise ValidationError('Expected %(m)s weights, got %(count)s', code='invalid',
                                  params={'m': self.graph.m, 'count': len(self.weights)})

    def weight(self, edge_ids: Iterable[int] | None = None) -> int:
        ids = range(self.graph.m) if edge_ids is None else edge_ids
        return sum(self.weights[e] for e in ids)


def degree(g: MultiGraph, v: int) -> int:
    return g.degree(v)


def is_connected(g: MultiGraph) -> bool:
    return g.is_connected()


def unweighted(g: MultiGraph | WeightedMultiGraph) -> MultiGraph:
    return g.graph if isinstance(g, WeightedMultiGraph) else g


def require_connected(g: MultiGraph):
    if not g.is_connected():
        raise ValidationError('The graph is not connected', code='disconnected')
