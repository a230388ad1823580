"""The degree-bounded spanning tree LP on G', solved by generating forest rows.

The full system is

    x(E*) = |V'| - 1
    x(E*(S)) <= |S| - 1                         for S subset of V', |S| >= 2
    sum over live E-bar edges e of n_v(e) x_e
        + k x(E*(V'_v)) <= k deg(v)             for v in Q
    x >= 0

where n_v(e) counts the slots of e lying over v. Forest rows are added only
when ``separate_forest`` finds them violated.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

import networkx as nx
from django.conf import settings
from networkx.algorithms.flow import edmonds_karp

from relaxation.services.simplex import LpError, LpProblem, LpRow, LpSession, check_vertex_rank
from trails.services.auxgraph import AuxGraph
from trails.utils.multigraph import MultiGraph, WeightedMultiGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForestCut:
    subset: frozenset
    violation: Fraction


@dataclass
class RowPool:
    """Forest rows found so far, kept in discovery order."""

    subsets: list[frozenset] = field(default_factory=list)

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def add(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        if subset in self.subsets:
            return False
        self.subsets.append(subset)
        return True


def inside(gprime: MultiGraph, edges: Iterable[int], subset: frozenset) -> list[int]:
    return [x for x in edges if gprime.edges[x][0] in subset and gprime.edges[x][1] in subset]


def _violation(values, gprime, support, subset):
    return sum((values[x] for x in inside(gprime, support, subset)), Fraction(0)) - len(subset) + 1


def connected_sets(adjacency: Mapping[int, set], root: int, gain=None, start=0):
    """
    Every connected vertex set of two or more vertices whose least vertex is
    ``root``, each exactly once, paired with ``start`` plus the gains of the
    vertices added to reach it.
    """
    stack = [(frozenset([root]), start, [u for u in adjacency[root] if u > root], adjacency[root] | {root})]
    while stack:
        subset, score, extension, closed = stack.pop()
        while extension:
            w = extension.pop()
            grown = subset | {w}
            grown_score = score + gain(subset, w) if gain else score
            yield grown, grown_score
            fresh = [u for u in adjacency[w] if u > root and u not in closed]
            stack.append((grown, grown_score, extension + fresh, closed | adjacency[w]))


@dataclass
class SupportGraph:
    """x over the support in integer units of 1/scale; loops are folded into ``bonus``."""

    weight: dict
    bonus: dict
    scale: int

    @classmethod
    def of(cls, values, gprime, support):
        scale = lcm(*(values[x].denominator for x in support))
        weight, bonus = defaultdict(dict), defaultdict(int)
        for x in support:
            a, b = gprime.edges[x]
            amount = int(values[x] * scale)
            bonus[a] += 0
            bonus[b] += 0
            if a == b:
                bonus[a] += amount
                continue
            weight[a][b] = weight[a].get(b, 0) + amount
            weight[b][a] = weight[b].get(a, 0) + amount
        return cls(weight, bonus, scale)

    def degree(self, v, among):
        return sum(c for u, c in self.weight[v].items() if u in among)

    def core(self) -> set:
        """Peel loopless vertices of x-degree at most 1; some most violated set avoids them."""
        core = set(self.bonus)
        queue = sorted(core)
        while queue:
            v = queue.pop()
            if v in core and not self.bonus[v] and self.degree(v, core) <= self.scale:
                core.discard(v)
                queue.extend(u for u in self.weight[v] if u in core)
        return core

    def adjacency(self, core):
        return {v: {u for u in self.weight[v] if u in core} for v in core}

    def gain(self, subset, w):
        return sum(c for u, c in self.weight[w].items() if u in subset) + self.bonus[w] - self.scale

    def score(self, subset):
        inner = sum(self.degree(v, subset) for v in subset) // 2
        return inner + sum(self.bonus[v] for v in subset) - self.scale * (len(subset) - 1)


def _separate_exhaustive(graph, core):
    adjacency = graph.adjacency(core)
    best, best_score = None, 0
    for root in sorted(core):
        for subset, score in connected_sets(adjacency, root, graph.gain, graph.bonus[root]):
            if score > best_score:
                best, best_score = subset, score
    return best


def _separate_min_cut(graph, core):
    """Per root r, min over S containing r of |S| - x(E(S)) as an s-t cut, earlier roots held out."""
    vertices = sorted(core)
    surplus = {v: 2 * graph.scale - graph.degree(v, core) - 2 * graph.bonus[v] for v in vertices}
    arcs = [(a, b, {'capacity': c}) for a in vertices for b, c in graph.weight[a].items() if b in core]
    best, best_score = None, 0
    for i, root in enumerate(vertices):
        network = nx.DiGraph()
        network.add_node('sink')
        network.add_edges_from(arcs)
        network.add_edge('source', root)
        network.add_edges_from((v, 'sink') for v in vertices[:i])
        for v in vertices[i + 1:]:
            if surplus[v] >= 0:
                network.add_edge(v, 'sink', capacity=surplus[v])
            else:
                network.add_edge('source', v, capacity=-surplus[v])
        _, (source_side, _) = nx.minimum_cut(network, 'source', 'sink', flow_func=edmonds_karp)
        subset = frozenset(v for v in source_side if v != 'source')
        if len(subset) < 2:
            continue
        score = graph.score(subset)
        if score > best_score:
            best, best_score = subset, score
    return best


def separate_forest(values: Mapping[int, Fraction], live: Iterable[int], gprime: MultiGraph,
                    exhaustive_limit: int | None = None) -> ForestCut | None:
    """Most violated forest row x(E*(S)) <= |S| - 1, or None when x obeys them all."""
    limit = settings.SEPARATION_EXHAUSTIVE_LIMIT if exhaustive_limit is None else exhaustive_limit
    support = [x for x in live if values.get(x, 0) > 0]
    if not support:
        return None
    graph = SupportGraph.of(values, gprime, support)
    core = graph.core()
    if not core:
        return None
    subset = (_separate_exhaustive if gprime.n <= limit else _separate_min_cut)(graph, core)
    if subset is None:
        return None
    return ForestCut(subset, _violation(values, gprime, support, subset))


def extended_weights(g: WeightedMultiGraph, aux: AuxGraph) -> dict[int, Fraction]:
    """E-bar edges carry the weight of their edge of G, K edges weigh nothing."""
    weights = {x: Fraction(0) for x in range(aux.gprime.m)}
    weights.update((e, Fraction(g.weights[e])) for e in aux.ebar)
    return weights


@dataclass
class TreeLpSystem:
    aux: AuxGraph
    k: int
    weights: Mapping[int, Fraction]
    live: set
    degree_rows: set

    @classmethod
    def initial(cls, g: WeightedMultiGraph, aux: AuxGraph, k: int) -> 'TreeLpSystem':
        return cls(aux, k, extended_weights(g, aux), set(range(aux.gprime.m)), set(range(aux.graph.n)))

    def slots_over(self, e: int, v: int) -> int:
        return (self.aux.slot_vertex(2 * e) == v) + (self.aux.slot_vertex(2 * e + 1) == v)

    def live_ebar_degree(self, v: int) -> int:
        """Live E-bar edge ends over v."""
        return sum(self.slots_over(e, v) for e in self.aux.ebar if e in self.live)

    def live_k_count(self, v: int) -> int:
        return sum(1 for x in self.aux.kpart[v] if x in self.live)

    def degree_row(self, v: int) -> LpRow:
        coeffs = {e: self.slots_over(e, v) for e in self.aux.ebar if e in self.live and self.slots_over(e, v)}
        coeffs.update((x, self.k) for x in self.aux.kpart[v] if x in self.live)
        return LpRow(f'degree_{v}', coeffs, '<=', self.k * self.aux.graph.degrees[v])

    def _span_row(self):
        return LpRow('span', {x: 1 for x in self.live}, '=', self.aux.gprime.n - 1)

    def _forest_row(self, name, subset):
        edges = inside(self.aux.gprime, self.live, subset)
        if not edges:
            return None
        return LpRow(name, {x: 1 for x in edges}, '<=', len(subset) - 1)

    def problem(self, pool: RowPool) -> LpProblem:
        rows = [self._span_row()]
        for i, subset in enumerate(pool):
            row = self._forest_row(f'forest_{i}', subset)
            if row is not None:
                rows.append(row)
        rows.extend(self.degree_row(v) for v in sorted(self.degree_rows))
        variables = tuple(sorted(self.live))
        objective = {x: self.weights[x] for x in variables}
        return LpProblem(variables, objective, rows, name=f'tree_lp_k{self.k}')

    def full_problem(self) -> LpProblem:
        """Every forest row of a connected vertex set, for small G' only."""
        adjacency = defaultdict(set)
        for x in self.live:
            a, b = self.aux.gprime.edges[x]
            adjacency[a].add(b)
            adjacency[b].add(a)
        subsets = [subset for root in range(self.aux.gprime.n) for subset, _ in connected_sets(adjacency, root)]
        return self.problem(RowPool(subsets))


def solve_with_cuts(system: TreeLpSystem, pool: RowPool, exhaustive_limit: int | None = None,
                    check_vertex: bool | None = None, session: LpSession | None = None):
    """
    Solve, separate and add forest rows to ``pool`` until none is violated.

    Rounds re-optimize the previous tableau through ``session``. The vertex
    check runs once, on the solution returned.
    """
    check_vertex = settings.LP_CHECK_VERTEX if check_vertex is None else check_vertex
    session = session or LpSession()
    rounds = 0
    while True:
        problem = system.problem(pool)
        solution = session.solve(problem)
        if solution.status != 'optimal':
            logger.debug('cut loop stopped: %s after %d rounds', solution.status, rounds)
            return solution
        cut = separate_forest(solution.values, system.live, system.aux.gprime, exhaustive_limit)
        if cut is None:
            logger.debug('cut loop optimal %s after %d rounds, %d pooled rows, %d warm and %d cold solves',
                         solution.objective, rounds, len(pool), session.warm_solves, session.cold_solves)
            if check_vertex:
                check_vertex_rank(problem, solution)
            return solution
        if not pool.add(cut.subset):
            raise LpError(f'separation returned the pooled row over {sorted(cut.subset)}')
        rounds += 1
        logger.debug('round %d: forest row over %d slots violated by %s',
                     rounds, len(cut.subset), cut.violation)
