"""Iterative relaxation for cheap contained trails.

Starting from the LP over all of G' with a degree row for every vertex, each
round solves to an extreme point and then either deletes an edge at value 0
or drops the degree row of a vertex whose live edges cannot overload it by
more than a factor (2k - 1) / k. With no rows left the optimum is a spanning
tree T of G', and T & E-bar is a (2k - 1)-trail of weight at most the LP value.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from django.conf import settings
from django.core.exceptions import ValidationError

from relaxation.services.forest_cuts import TreeLpSystem, RowPool, solve_with_cuts
from relaxation.services.simplex import LpBasicSolution, LpError, LpProblem, LpSession
from trails.services.auxgraph import AuxTree, build_aux, tree_to_witness
from trails.services.containment import bridges
from trails.services.preimage import PreimageWitness, balance_degrees, verify_witness
from trails.services.recognition import is_k_trail, require_k
from trails.utils.multigraph import WeightedMultiGraph, require_connected

logger = logging.getLogger(__name__)

SUPPORT = 'support'
MIXED = 'mixed'


class RelaxationStuck(RuntimeError):
    """No zero edge and no droppable vertex: the progress guarantee failed."""


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    lp_value: Fraction
    live_edges: int
    live_vertices: int
    action: str
    target: int | None = None
    condition: str = ''


@dataclass
class RelaxationState:
    system: TreeLpSystem
    pool: RowPool = field(default_factory=RowPool)
    solution: LpBasicSolution | None = None
    log: list[IterationRecord] = field(default_factory=list)
    dropped: dict[int, str] = field(default_factory=dict)
    session: LpSession = field(default_factory=LpSession)

    def zero_edge(self):
        return min((x for x in self.system.live if self.solution.values[x] == 0), default=None)

    def droppable_vertex(self):
        bound = 2 * self.system.k - 1
        degrees = self.system.aux.graph.degrees
        for v in sorted(self.system.degree_rows):
            support = self.system.live_ebar_degree(v)
            if support <= bound:
                return v, SUPPORT
            if support + bound * self.system.live_k_count(v) <= bound * degrees[v]:
                return v, MIXED
        return None, ''

    def record(self, action, target=None, condition=''):
        entry = IterationRecord(len(self.log), self.solution.objective, len(self.system.live),
                                len(self.system.degree_rows), action, target, condition)
        self.log.append(entry)
        logger.debug('iteration %d: value %s, %d live edges, %d rows, %s %s',
                     entry.iteration, entry.lp_value, entry.live_edges, entry.live_vertices,
                     action, '' if target is None else target)


@dataclass(frozen=True)
class TrailApproximation:
    k: int
    bound: int
    edges: frozenset
    witness: PreimageWitness
    weight: int
    lp_value: Fraction
    final_value: Fraction
    tree: frozenset
    trace: tuple[IterationRecord, ...]
    problem: LpProblem

    @property
    def iterations(self) -> int:
        return len(self.trace)


@dataclass(frozen=True)
class NoKTrailCertificate:
    """The first relaxation is infeasible, so g contains no k-trail."""

    k: int
    farkas: dict
    infeasibility: Fraction
    problem: LpProblem


def _solve(state, exhaustive_limit, check_vertex):
    solution = solve_with_cuts(state.system, state.pool, exhaustive_limit, check_vertex, state.session)
    if solution.status != 'optimal':
        raise LpError(f'relaxation became {solution.status} after {len(state.log)} iterations')
    if state.solution is not None and solution.objective > state.solution.objective:
        raise LpError(f'relaxation value rose from {state.solution.objective} to {solution.objective}')
    state.solution = solution


def _check_dropped(state, tree):
    aux = state.system.aux
    bound = 2 * state.system.k - 1
    for v, condition in state.dropped.items():
        tree_degree = sum(state.system.slots_over(e, v) for e in aux.ebar if e in tree)
        tree_k = sum(1 for x in aux.kpart[v] if x in tree)
        if condition == SUPPORT:
            safe = tree_degree <= bound
        else:
            safe = tree_degree + bound * tree_k <= bound * aux.graph.degrees[v]
        if not safe:
            raise RelaxationStuck(f'vertex {v}, dropped by the {condition} rule, is overloaded')


def approx_min_weight_trail(g: WeightedMultiGraph, k: int, exhaustive_limit: int | None = None,
                            check_vertex: bool | None = None) -> TrailApproximation | NoKTrailCertificate:
    require_k(k, least=2)
    require_connected(g.graph)
    aux = build_aux(g.graph)
    state = RelaxationState(TreeLpSystem.initial(g, aux, k))
    first = solve_with_cuts(state.system, state.pool, exhaustive_limit, check_vertex, state.session)
    if first.status == 'infeasible':
        logger.info('no %d-trail: first relaxation infeasible', k)
        return NoKTrailCertificate(k, first.farkas, first.infeasibility, state.system.problem(state.pool))
    if first.status != 'optimal':
        raise LpError(f'first relaxation is {first.status}')
    state.solution = first
    lp_value = first.objective
    limit = aux.gprime.m + g.graph.n

    while state.system.degree_rows:
        if len(state.log) >= limit:
            raise RelaxationStuck(f'more than {limit} iterations')
        edge = state.zero_edge()
        if edge is not None:
            state.system.live.discard(edge)
            state.record('delete_edge', edge)
        else:
            vertex, condition = state.droppable_vertex()
            if vertex is None:
                raise RelaxationStuck(f'no zero edge and no droppable vertex among '
                                      f'{sorted(state.system.degree_rows)}')
            state.system.degree_rows.discard(vertex)
            state.dropped[vertex] = condition
            state.record('drop_vertex', vertex, condition)
        _solve(state, exhaustive_limit, check_vertex)

    values = state.solution.values
    if any(x not in (0, 1) for x in values.values()):
        raise LpError('the final relaxation is not integral')
    tree = frozenset(x for x, value in values.items() if value == 1)
    if len(tree) != aux.gprime.n - 1:
        raise LpError(f'the final relaxation picks {len(tree)} edges, not a spanning tree')
    state.record('final')
    _check_dropped(state, tree)

    edges = frozenset(e for e in aux.ebar if e in tree)
    bound = 2 * k - 1
    witness = balance_degrees(g.graph, tree_to_witness(aux, AuxTree(tree, False)), edges)
    check = verify_witness(g.graph, witness, bound, edges)
    if not check:
        raise RelaxationStuck(f'the rounded tree is not a {bound}-trail: {check.reason}')
    weight = g.weight(edges)
    logger.info('relaxation: %d edges of weight %d, first LP value %s, %d iterations',
                len(edges), weight, lp_value, len(state.log))
    return TrailApproximation(k, bound, edges, witness, weight, lp_value, state.solution.objective,
                              tree, tuple(state.log), state.system.problem(state.pool))


@dataclass(frozen=True)
class MinWeightAnswer:
    found: bool
    weight: int | None = None
    edges: frozenset | None = None

    def __bool__(self):
        return self.found


def oracle_min_weight_k_trail(g: WeightedMultiGraph, k: int, max_edges: int | None = None) -> MinWeightAnswer:
    """Cheapest connected spanning U with (V, U) a k-trail, by exhaustive search."""
    require_k(k)
    graph = g.graph
    max_edges = settings.ORACLE_MAX_EDGES if max_edges is None else max_edges
    if not graph.is_connected():
        return MinWeightAnswer(False)
    forced = bridges(graph)
    free = sorted(set(range(graph.m)) - forced)
    if len(free) > max_edges:
        raise ValidationError('%(count)s free edges exceed the oracle limit of %(limit)s',
                              code='size_guard', params={'count': len(free), 'limit': max_edges})
    best = MinWeightAnswer(False)
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            chosen = forced | frozenset(extra)
            weight = g.weight(chosen)
            if best and weight >= best.weight:
                continue
            if graph.is_connected(chosen) and is_k_trail(graph.edge_subgraph(chosen), k):
                best = MinWeightAnswer(True, weight, chosen)
    return best
