from trails.services.recognition import is_k_trail
from trails.utils.commands import EXIT_NO, EXIT_OK, TrailCommand
from trails.validators import k_validator


class Command(TrailCommand):
    help = 'Write a k-tree witness (JSON nodes and edges) for a k-trail.'

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file.')
        parser.add_argument('-k', type=int, required=True, help='Degree bound of the preimage.')
        parser.add_argument('--dot', action='store_true', help='Write the witness graph as DOT.')

    def run(self, graph, k, dot=False, **options):
        g = self.load_graph(graph)
        result = is_k_trail(g, k_validator(k))
        if not result:
            return EXIT_NO
        payload = self.verified_witness(g, result.witness, k)
        if dot:
            self.emit(text=self.witness_dot(result.witness))
        else:
            self.options['as_json'] = True
            self.emit(payload)
        return EXIT_OK
