"""Plain-text and DOT codecs for multigraphs.

File format::

    # comment
    p ktrail <n> <m>
    e <u> <v> [<w>]      (exactly m lines, vertices 0-based)

Weights are all-or-none: a file with weights on every edge line parses to a
``WeightedMultiGraph``.
"""
from typing import Iterable, Mapping

from django.core.exceptions import ValidationError

from trails.utils.multigraph import MultiGraph, WeightedMultiGraph, unweighted


def _parse_error(lineno, message):
    return ValidationError(f'line {lineno}: {message}', code='parse')


def _to_int(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise _parse_error(lineno, f'{what} {token!r} is not an integer')


def parse_graph(text: str) -> MultiGraph | WeightedMultiGraph:
    header = None
    edges = []
    weights = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 4 or tokens[:2] != ['p', 'ktrail']:
                raise _parse_error(lineno, "expected header 'p ktrail <n> <m>'")
            n = _to_int(tokens[2], lineno, 'vertex count')
            m = _to_int(tokens[3], lineno, 'edge count')
            if n < 2:
                raise _parse_error(lineno, f'a graph needs at least 2 vertices, got {n}')
            if m < 0:
                raise _parse_error(lineno, f'negative edge count {m}')
            header = (n, m)
            continue
        if tokens[0] != 'e' or len(tokens) not in (3, 4):
            raise _parse_error(lineno, "expected edge line 'e <u> <v> [<w>]'")
        n, m = header
        if len(edges) == m:
            raise _parse_error(lineno, f'more than the {m} declared edges')
        u = _to_int(tokens[1], lineno, 'vertex')
        v = _to_int(tokens[2], lineno, 'vertex')
        for vertex in (u, v):
            if not 0 <= vertex < n:
                raise _parse_error(lineno, f'vertex {vertex} outside 0..{n - 1}')
        if len(tokens) == 4:
            weights.append(_to_int(tokens[3], lineno, 'weight'))
        if weights and len(weights) != len(edges) + 1:
            raise _parse_error(lineno, 'weights must be given on every edge line or on none')
        edges.append((u, v))

    if header is None:
        raise _parse_error(lineno, "missing header 'p ktrail <n> <m>'")
    n, m = header
    if len(edges) != m:
        raise _parse_error(lineno, f'declared {m} edges, found {len(edges)}')
    graph = MultiGraph(n, tuple(edges))
    if weights:
        return WeightedMultiGraph(graph, tuple(weights))
    return graph


def render_graph(g: MultiGraph | WeightedMultiGraph) -> str:
    graph = unweighted(g)
    lines = [f'p ktrail {graph.n} {graph.m}']
    for e, (u, v) in enumerate(graph.edges):
        if isinstance(g, WeightedMultiGraph):
            lines.append(f'e {u} {v} {g.weights[e]}')
        else:
            lines.append(f'e {u} {v}')
    return '\n'.join(lines) + '\n'


def render_dot(g: MultiGraph | WeightedMultiGraph, name: str = 'G',
               clusters: Mapping[str, Iterable[int]] | None = None,
               labels: Mapping[int, str] | None = None,
               bold_edges: Iterable[int] = ()) -> str:
    """DOT text; parallel edges stay parallel and loops become self-edges.

    ``clusters`` groups vertices into ``subgraph cluster_*`` blocks and
    ``bold_edges`` marks edge ids drawn bold.
    """
    graph = unweighted(g)
    labels = labels or {}
    bold = set(bold_edges)
    lines = [f'graph {name} {{']
    clustered = set()
    for title, members in (clusters or {}).items():
        members = list(members)
        clustered.update(members)
        lines.append(f'  subgraph cluster_{title} {{')
        lines.append(f'    label="{title}";')
        lines.extend(f'    {v}{_vertex_attrs(v, labels)};' for v in members)
        lines.append('  }')
    lines.extend(f'  {v}{_vertex_attrs(v, labels)};' for v in range(graph.n) if v not in clustered)
    for e, (u, v) in enumerate(graph.edges):
        attrs = [f'label="{g.weights[e]}"'] if isinstance(g, WeightedMultiGraph) else []
        if e in bold:
            attrs.append('style=bold')
        suffix = f' [{", ".join(attrs)}]' if attrs else ''
        lines.append(f'  {u} -- {v}{suffix};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def _vertex_attrs(v, labels):
    return f' [label="{labels[v]}"]' if v in labels else ''
