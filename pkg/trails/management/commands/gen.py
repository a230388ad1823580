from django.core.exceptions import ValidationError

from trails.services.instances import gen_gap_instance, gen_hardness_gadget, gen_random_multigraph
from trails.utils.commands import TrailCommand
from trails.utils.graph_io import render_dot, render_graph
from trails.utils.multigraph import WeightedMultiGraph, unweighted


class Command(TrailCommand):
    help = 'Generate a reduction gadget, a gap instance or a random multigraph.'

    def add_command_arguments(self, parser):
        parser.add_argument('kind', choices=['gadget', 'gap', 'random'])
        parser.add_argument('--cubic', help='Cubic graph file (gadget).')
        parser.add_argument('-k', type=int, help='Trail parameter (gadget, gap).')
        parser.add_argument('-n', type=int, help='Ring length (gap) or vertex count (random).')
        parser.add_argument('-m', type=int, help='Edge count (random).')
        parser.add_argument('--weights', type=int, default=-1, help='Edge weight of the gap instance.')
        parser.add_argument('--loop-p', type=float, default=0.0)
        parser.add_argument('--parallel-p', type=float, default=0.0)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--dot', action='store_true', help='Write DOT instead of the graph format.')

    def run(self, kind, k=None, n=None, m=None, dot=False, **options):
        if kind == 'gadget':
            if not options['cubic'] or k is None:
                raise ValidationError('gadget needs --cubic and -k', code='invalid')
            g = gen_hardness_gadget(self.load_graph(options['cubic']), k)
        elif kind == 'gap':
            if k is None or n is None:
                raise ValidationError('gap needs -k and -n', code='invalid')
            g = gen_gap_instance(k, n, options['weights'])
        else:
            if n is None or m is None:
                raise ValidationError('random needs -n and -m', code='invalid')
            g = gen_random_multigraph(n, m, options['loop_p'], options['parallel_p'], options['seed'])
        graph = unweighted(g)
        payload = {'n': graph.n, 'edges': [list(edge) for edge in graph.edges]}
        if isinstance(g, WeightedMultiGraph):
            payload['weights'] = list(g.weights)
        self.emit(payload, render_dot(g) if dot else render_graph(g))
