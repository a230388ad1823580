from django.core.exceptions import ValidationError

from relaxation.services.weighted import oracle_min_weight_k_trail
from trails.services.containment import oracle_contains_k_trail
from trails.services.oracles import oracle_feasible_split, oracle_has_hamiltonian_path, oracle_min_k
from trails.utils.commands import EXIT_NO, EXIT_OK, TrailCommand
from trails.utils.multigraph import WeightedMultiGraph, unweighted
from trails.validators import k_validator, split_vector_validator


class Command(TrailCommand):
    help = 'Exhaustive reference answers for small graphs; refuses (exit 3) above the size guard.'

    def add_command_arguments(self, parser):
        parser.add_argument('kind', choices=['min-k', 'feasible', 'contains', 'min-weight', 'hamiltonian'])
        parser.add_argument('graph', help='Graph file.')
        parser.add_argument('-k', type=int)
        parser.add_argument('--mu', help='Split vector for feasible, e.g. 1,0,0.')
        parser.add_argument('--max-edges', type=int, help='Size guard; defaults to the configured limit.')

    def run(self, kind, graph, k=None, mu=None, max_edges=None, **options):
        loaded = self.load_graph(graph, weighted=True)
        g = unweighted(loaded)
        if kind == 'min-k':
            value = oracle_min_k(g, max_edges)
            self.emit({'min_k': value}, str(value))
            return EXIT_OK
        if kind == 'feasible':
            if mu is None:
                raise ValidationError('feasible needs --mu', code='invalid')
            answer = oracle_feasible_split(g, split_vector_validator(mu, g.n), max_edges)
            payload = {'feasible': answer}
        elif kind == 'contains':
            result = oracle_contains_k_trail(g, k_validator(k), max_edges)
            answer = result.contains
            payload = {'contains': answer, 'edges': sorted(result.edges) if answer else None}
        elif kind == 'min-weight':
            if not isinstance(loaded, WeightedMultiGraph):
                loaded = WeightedMultiGraph(g, (1,) * g.m)
            result = oracle_min_weight_k_trail(loaded, k_validator(k), max_edges)
            answer = result.found
            payload = {'found': answer, 'weight': result.weight,
                       'edges': sorted(result.edges) if answer else None}
        else:
            answer = oracle_has_hamiltonian_path(g)
            payload = {'hamiltonian_path': answer}
        text = 'yes' if answer else 'no'
        if kind == 'min-weight' and answer:
            text = f'yes\nweight: {payload["weight"]}'
        self.emit(payload, text)
        return EXIT_OK if answer else EXIT_NO
