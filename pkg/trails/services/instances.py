"""Instance generators: reduction gadgets, gap rings and random multigraphs."""
import random
from functools import lru_cache
from itertools import combinations, product
from string import ascii_lowercase
from typing import Iterator

import networkx as nx
from django.core.exceptions import ValidationError

from trails.utils.multigraph import MultiGraph, WeightedMultiGraph


def _require_cubic(cubic: MultiGraph):
    simple = all(u != v for u, v in cubic.edges) and len({frozenset(p) for p in cubic.edges}) == cubic.m
    if not simple or any(d != 3 for d in cubic.degrees):
        raise ValidationError('Expected a simple 3-regular graph', code='invalid')


def gen_hardness_gadget(cubic: MultiGraph, k: int) -> MultiGraph:
    """Attach k - 2 pendant vertices to every vertex of a cubic graph.

    The result contains a k-trail exactly when the cubic graph has a
    Hamiltonian path.
    """
    if k < 2:
        raise ValidationError('The gadget needs k >= 2', code='invalid')
    _require_cubic(cubic)
    edges = list(cubic.edges)
    n = cubic.n
    for v in range(cubic.n):
        for _ in range(k - 2):
            edges.append((v, n))
            n += 1
    return MultiGraph(n, tuple(edges))


def gen_gap_instance(k: int, n: int, weight: int = -1) -> WeightedMultiGraph:
    """Ring v_0..v_{n-1} with pendants that raise every ring vertex to degree 2k - 1.

    The ring edges v_0 v_1 and v_{n-1} v_0 are single, every other ring edge is
    doubled, and all edges weigh ``weight``. v_0 gets 2k - 3 pendants, v_1 and
    v_{n-1} get 2k - 4 and the rest 2k - 5.
    """
    if k < 3 or n < k:
        raise ValidationError('The gap instance needs k >= 3 and n >= k', code='invalid')
    edges = [(0, 1)]
    for i in range(1, n - 1):
        edges.extend([(i, i + 1), (i, i + 1)])
    edges.append((n - 1, 0))
    ring_degree = [0] * n
    for u, v in edges:
        ring_degree[u] += 1
        ring_degree[v] += 1
    pendants = [2 * k - 3, 2 * k - 4] + [2 * k - 5] * (n - 3) + [2 * k - 4]
    if [2 * k - 1 - d for d in ring_degree] != pendants:
        raise RuntimeError(f'ring degrees {ring_degree} do not match the pendant counts {pendants}')
    vertices = n
    for v in range(n):
        for _ in range(pendants[v]):
            edges.append((v, vertices))
            vertices += 1
    return WeightedMultiGraph(MultiGraph(vertices, tuple(edges)), tuple(weight for _ in edges))


def gen_random_multigraph(n: int, m: int, loop_p: float = 0.0, parallel_p: float = 0.0,
                          seed: int | None = None) -> MultiGraph:
    """Connected multigraph: a random spanning tree, then m - n + 1 extra edges.

    Each extra edge is a loop with probability ``loop_p``, otherwise a copy of an
    existing edge with probability ``parallel_p``, otherwise a random pair.
    """
    if n < 2 or m < n - 1:
        raise ValidationError('Need n >= 2 and m >= n - 1', code='invalid')
    rng = random.Random(seed)
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    while len(edges) < m:
        roll = rng.random()
        if roll < loop_p:
            v = rng.randrange(n)
            edges.append((v, v))
        elif roll < loop_p + parallel_p and edges:
            edges.append(rng.choice(edges))
        else:
            u, v = rng.sample(range(n), 2)
            edges.append((u, v))
    order = list(range(n))
    rng.shuffle(order)
    return MultiGraph(n, tuple((order[u], order[v]) for u, v in edges))


def gen_random_weights(g: MultiGraph, low: int, high: int, seed: int | None = None) -> WeightedMultiGraph:
    rng = random.Random(seed)
    return WeightedMultiGraph(g, tuple(rng.randint(low, high) for _ in range(g.m)))


def iter_connected_multigraphs(n: int, max_m: int, min_m: int | None = None) -> Iterator[MultiGraph]:
    """Every connected multigraph on n labelled vertices with min_m..max_m edges.

    Edges are drawn as a non-decreasing sequence of vertex pairs, loops
    included, so each edge multiset appears exactly once.
    """
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    start = n - 1 if min_m is None else max(min_m, n - 1)
    for m in range(start, max_m + 1):
        for chosen in _multisets(len(pairs), m):
            g = MultiGraph(n, tuple(pairs[i] for i in chosen))
            if g.is_connected():
                yield g


def _multisets(size, length, first=0):
    if length == 0:
        yield ()
        return
    for i in range(first, size):
        for rest in _multisets(size, length - 1, i):
            yield (i,) + rest


def _from_pairs(n, pairs):
    return MultiGraph(n, tuple(pairs))


def _circulant(n, steps):
    return _from_pairs(n, sorted({tuple(sorted((v, (v + s) % n))) for v in range(n) for s in steps}))


CUBIC_GRAPHS = {
    'k4': lambda: _from_pairs(4, combinations(range(4), 2)),
    'k33': lambda: _from_pairs(6, product(range(3), range(3, 6))),
    'prism': lambda: _from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                                     (0, 3), (1, 4), (2, 5)]),
    'cube': lambda: _from_pairs(8, [(u, u ^ bit) for u in range(8) for bit in (1, 2, 4) if u < u ^ bit]),
    'wagner': lambda: _circulant(8, (1, 4)),
    'two_k4': lambda: _from_pairs(8, list(combinations(range(4), 2)) + list(combinations(range(4, 8), 2))),
}


def _cubic_completions(n, edges, degree):
    """Cubic edge sets extending ``edges``, each labelled graph once."""
    v = next((v for v in range(n) if degree[v] < 3), None)
    if v is None:
        yield tuple(edges)
        return
    for u in range(v + 1, n):
        if degree[u] < 3 and (v, u) not in edges:
            degree[v] += 1
            degree[u] += 1
            edges.append((v, u))
            yield from _cubic_completions(n, edges, degree)
            edges.pop()
            degree[v] -= 1
            degree[u] -= 1


def _connected_cubic(n):
    """One networkx graph per isomorphism class of connected simple cubic graphs on n vertices."""
    found = []
    # every class has a labelling with 0 adjacent to 1, 2 and 3
    for edges in _cubic_completions(n, [(0, 1), (0, 2), (0, 3)], [3, 1, 1, 1] + [0] * (n - 4)):
        g = nx.Graph(edges)
        if nx.is_connected(g) and not any(nx.is_isomorphic(g, h) for h in found):
            found.append(g)
    return found


@lru_cache
def cubic_catalog(max_n: int = 8) -> tuple[tuple[str, MultiGraph], ...]:
    """Every connected simple cubic graph on at most ``max_n`` vertices, once up to isomorphism.

    Graphs isomorphic to an entry of ``CUBIC_GRAPHS`` keep its name and
    labelling, the rest are called cubic<n>_a, cubic<n>_b and so on.
    """
    named = {name: build() for name, build in CUBIC_GRAPHS.items()}
    catalog = []
    for n in range(4, max_n + 1, 2):
        unnamed = iter(ascii_lowercase)
        for g in _connected_cubic(n):
            match = next((name for name, h in named.items()
                          if h.n == n and nx.is_isomorphic(g, nx.Graph(h.edges))), None)
            if match is None:
                edges = sorted(tuple(sorted(e)) for e in g.edges())
                catalog.append((f'cubic{n}_{next(unnamed)}', _from_pairs(n, edges)))
            else:
                catalog.append((match, named[match]))
    return tuple(catalog)


def iter_cubic_graphs(max_n: int = 8) -> Iterator[tuple[str, MultiGraph]]:
    """Connected cubic graphs on at most ``max_n`` vertices, smallest first."""
    yield from cubic_catalog(max_n)
