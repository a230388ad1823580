import logging
from dataclasses import dataclass, field
from typing import Iterable

from django.core.exceptions import ValidationError

from trails.services.auxgraph import AuxGraph, AuxTree, build_aux, tree_to_witness
from trails.services.matroids import capacity_matroid, contracted_graphic_matroid, matroid_intersection
from trails.services.preimage import PreimageWitness, balance_degrees, verify_witness
from trails.utils.multigraph import MultiGraph, require_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitFeasibility:
    feasible: bool
    mu: tuple[int, ...]
    capacities: tuple[int, ...]
    size: int = 0
    needed: int = 0
    tree: AuxTree | None = None
    cut: frozenset = field(default_factory=frozenset)

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class RecognitionResult:
    k: int
    answer: bool
    multiplicities: tuple[int, ...]
    capacities: tuple[int, ...]
    witness: PreimageWitness | None = None
    cut: frozenset = field(default_factory=frozenset)

    def __bool__(self):
        return self.answer


def require_k(k, least=1):
    if isinstance(k, bool) or not isinstance(k, int) or k < least:
        raise ValidationError('k must be an integer of at least %(least)s, got %(k)s',
                              code='invalid', params={'least': least, 'k': k})


def feasible_split(g: MultiGraph, mu: Iterable[int], aux: AuxGraph | None = None) -> SplitFeasibility:
    """Is mu + 1 a feasible multiplicity vector of g?

    Feasible exactly when some spanning tree of G' through all of E-bar keeps at
    most deg(v) - 1 - mu(v) edges of every K_v.
    """
    mu = tuple(mu)
    if len(mu) != g.n or any(x < 0 for x in mu):
        raise ValidationError('A split vector needs %(n)s nonnegative entries', code='invalid',
                              params={'n': g.n})
    aux = aux or build_aux(g)
    capacities = tuple(d - 1 - x for d, x in zip(g.degrees, mu))
    needed = g.m - 1
    if any(c < 0 for c in capacities):
        return SplitFeasibility(False, mu, capacities, needed=needed)
    result = matroid_intersection(contracted_graphic_matroid(aux),
                                  capacity_matroid(aux, dict(enumerate(capacities))))
    if len(result) < needed:
        logger.debug('split %s infeasible: common independent set of %d, need %d',
                      mu, len(result), needed)
        return SplitFeasibility(False, mu, capacities, len(result), needed, cut=result.cut)
    tree = AuxTree(frozenset(aux.ebar) | result.common, True)
    return SplitFeasibility(True, mu, capacities, len(result), needed, tree, result.cut)


def is_k_trail(g: MultiGraph, k: int) -> RecognitionResult:
    require_k(k)
    require_connected(g)
    multiplicities = tuple(-(-d // k) for d in g.degrees)
    mu = tuple(x - 1 for x in multiplicities)
    aux = build_aux(g)
    split = feasible_split(g, mu, aux)
    if not split:
        logger.info('not a %d-trail: n=%d m=%d', k, g.n, g.m)
        return RecognitionResult(k, False, multiplicities, split.capacities, cut=split.cut)
    witness = balance_degrees(g, tree_to_witness(aux, split.tree))
    check = verify_witness(g, witness, k)
    if not check:
        raise RuntimeError(f'recognition produced an invalid {k}-tree witness: {check.reason}')
    logger.info('a %d-trail: n=%d m=%d, witness on %d nodes', k, g.n, g.m, witness.h.n)
    return RecognitionResult(k, True, multiplicities, split.capacities, witness)


def min_trail_k(g: MultiGraph) -> int:
    """Smallest k for which g is a k-trail; g is always a max-degree-trail."""
    require_connected(g)
    start = 1 if g.m == 1 else 2
    for k in range(start, g.max_degree + 1):
        if is_k_trail(g, k):
            return k
    return g.max_degree


def min_contained_k_bounds(g: MultiGraph) -> tuple[int, int]:
    """Candidates for the smallest k such that g contains a k-trail.

    A graph containing a k-trail is a (k+1)-trail, so the answer is either
    min_trail_k(g) - 1 or min_trail_k(g).
    """
    k = min_trail_k(g)
    return max(1, k - 1), k
