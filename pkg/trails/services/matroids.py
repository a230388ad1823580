"""Graphic and partition matroids and their intersection.

The recognition problem asks for a common independent set of size |E| - 1
of the graphic matroid of G' with E-bar contracted and the partition matroid
on K = K_1 + ... + K_n with capacities deg(v) - 1 - mu(v).
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from django.core.exceptions import ValidationError
from networkx.utils import UnionFind

from trails.services.auxgraph import AuxGraph, AuxTree
from trails.utils.multigraph import MultiGraph

logger = logging.getLogger(__name__)


class GraphicMatroid:
    """Edge sets of ``graph`` that stay acyclic after contracting ``contracted``."""

    def __init__(self, graph: MultiGraph, contracted: Iterable[int] = (),
                 ground: Iterable[int] | None = None):
        self.graph = graph
        self.contracted = frozenset(contracted)
        if ground is None:
            ground = (x for x in range(graph.m) if x not in self.contracted)
        self.ground = frozenset(ground)

    def _forest(self) -> UnionFind:
        forest = UnionFind(range(self.graph.n))
        for x in self.contracted:
            forest.union(*self.graph.edges[x])
        return forest

    def is_independent(self, items: Iterable[int]) -> bool:
        forest = self._forest()
        for x in items:
            a, b = self.graph.edges[x]
            if forest[a] == forest[b]:
                return False
            forest.union(a, b)
        return True

    def rank(self, items: Iterable[int] | None = None) -> int:
        forest = self._forest()
        size = 0
        for x in self.ground if items is None else items:
            a, b = self.graph.edges[x]
            if forest[a] != forest[b]:
                forest.union(a, b)
                size += 1
        return size


class PartitionMatroid:
    """At most ``capacity[key]`` elements from each part."""

    def __init__(self, part_of: Mapping[Hashable, Hashable], capacity: Mapping[Hashable, int]):
        if any(c < 0 for c in capacity.values()):
            raise ValidationError('Partition capacities must be nonnegative', code='invalid')
        self.part_of = dict(part_of)
        self.capacity = dict(capacity)
        self.ground = frozenset(self.part_of)

    def _counts(self, items):
        counts = {}
        for x in items:
            key = self.part_of[x]
            counts[key] = counts.get(key, 0) + 1
        return counts

    def is_independent(self, items: Iterable[Hashable]) -> bool:
        return all(c <= self.capacity.get(key, 0) for key, c in self._counts(items).items())

    def rank(self, items: Iterable[Hashable] | None = None) -> int:
        counts = self._counts(self.ground if items is None else items)
        return sum(min(c, self.capacity.get(key, 0)) for key, c in counts.items())


@dataclass(frozen=True)
class IntersectionResult:
    """Maximum common independent set plus the reachability cut that proves it.

    ``cut`` holds the ground elements that can reach a sink of the final
    exchange graph; r1(cut) + r2(ground - cut) equals ``len(common)``.
    """

    common: frozenset
    cut: frozenset
    augmentations: int

    def __len__(self):
        return len(self.common)


def _augmenting_path(m1, m2, ground, current):
    outside = [y for y in ground if y not in current]
    inside = [x for x in ground if x in current]
    sources = {y for y in outside if m1.is_independent(current | {y})}
    sinks = {y for y in outside if m2.is_independent(current | {y})}
    arcs = {z: [] for z in ground}
    for x in inside:
        rest = current - {x}
        for y in outside:
            if m1.is_independent(rest | {y}):
                arcs[x].append(y)
            if m2.is_independent(rest | {y}):
                arcs[y].append(x)

    parent = {y: None for y in sorted(sources)}
    queue = deque(sorted(sources))
    while queue:
        z = queue.popleft()
        if z in sinks:
            path = []
            while z is not None:
                path.append(z)
                z = parent[z]
            return path[::-1], None
        for nxt in arcs[z]:
            if nxt not in parent:
                parent[nxt] = z
                queue.append(nxt)

    reverse = {z: [] for z in ground}
    for z, targets in arcs.items():
        for nxt in targets:
            reverse[nxt].append(z)
    reaches_sink = set(sinks)
    queue = deque(sinks)
    while queue:
        z = queue.popleft()
        for prev in reverse[z]:
            if prev not in reaches_sink:
                reaches_sink.add(prev)
                queue.append(prev)
    return None, frozenset(reaches_sink)


def matroid_intersection(m1, m2) -> IntersectionResult:
    """Maximum-cardinality common independent set by shortest augmenting paths."""
    if m1.ground != m2.ground:
        raise ValidationError('The two matroids must share a ground set', code='invalid')
    ground = sorted(m1.ground)
    current = set()
    for y in ground:
        if m1.is_independent(current | {y}) and m2.is_independent(current | {y}):
            current.add(y)
    augmentations = 0
    while True:
        path, cut = _augmenting_path(m1, m2, ground, frozenset(current))
        if path is None:
            break
        current.symmetric_difference_update(path)
        augmentations += 1
        logger.debug('augmented along %d elements to size %d', len(path), len(current))
    return IntersectionResult(frozenset(current), cut, augmentations)


def contracted_graphic_matroid(aux: AuxGraph) -> GraphicMatroid:
    return GraphicMatroid(aux.gprime, contracted=aux.ebar, ground=aux.k_edges)


def capacity_matroid(aux: AuxGraph, capacity: Mapping[int, int]) -> PartitionMatroid:
    return PartitionMatroid(aux.owner, capacity)


@dataclass(frozen=True)
class AlphaBasis:
    alpha: tuple[int, ...]
    tree: AuxTree


def max_weight_basis_alpha(aux: AuxGraph, weights: Mapping[int, Fraction]) -> AlphaBasis:
    """Greedy spanning tree containing E-bar maximizing sum weights(v) * alpha(v)."""
    n = aux.graph.n
    weights = {v: Fraction(weights[v]) for v in range(n)}
    order = sorted(aux.k_edges, key=lambda x: (-weights[aux.owner[x]], x))
    forest = contracted_graphic_matroid(aux)._forest()
    chosen = []
    for x in order:
        a, b = aux.gprime.edges[x]
        if forest[a] != forest[b]:
            forest.union(a, b)
            chosen.append(x)
    alpha = [0] * n
    for x in chosen:
        alpha[aux.owner[x]] += 1
    return AlphaBasis(tuple(alpha), AuxTree(frozenset(aux.ebar) | frozenset(chosen), True))


def max_weight_split(aux: AuxGraph, c: Mapping[int, Fraction]) -> tuple[int, ...]:
    """Split vector mu maximizing c . mu, via a basis minimizing c . alpha."""
    n = aux.graph.n
    if any(Fraction(c[v]) < 0 for v in range(n)):
        raise ValidationError('Split objectives must be nonnegative', code='invalid')
    basis = max_weight_basis_alpha(aux, {v: -Fraction(c[v]) for v in range(n)})
    degrees = aux.graph.degrees
    return tuple(degrees[v] - 1 - basis.alpha[v] for v in range(n))


def split_rank(aux: AuxGraph, subset: Iterable[int]) -> int:
    """Largest mu(S) over feasible split vectors mu."""
    subset = set(subset)
    mu = max_weight_split(aux, {v: int(v in subset) for v in range(aux.graph.n)})
    return sum(mu[v] for v in subset)
