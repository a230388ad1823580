from trails.serializers import RecognitionResultSerializer
from trails.services.recognition import is_k_trail
from trails.utils.commands import EXIT_NO, EXIT_OK, TrailCommand
from trails.validators import k_validator


class Command(TrailCommand):
    help = 'Decide whether a multigraph is a k-trail; exit 0 for yes and 1 for no.'

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file.')
        parser.add_argument('-k', type=int, required=True, help='Degree bound of the preimage.')
        parser.add_argument('--dot', action='store_true', help='Print the witness graph as DOT.')

    def run(self, graph, k, dot=False, **options):
        g = self.load_graph(graph)
        result = is_k_trail(g, k_validator(k))
        payload = RecognitionResultSerializer(result).data
        if result.witness is not None:
            payload['witness'] = self.verified_witness(g, result.witness, k)
        if dot and result.witness is not None and not options.get('as_json'):
            self.emit(text=self.witness_dot(result.witness))
        else:
            answer = 'yes' if result else 'no'
            multiplicities = ' '.join(map(str, result.multiplicities))
            self.emit(payload, f'{answer}\nmultiplicities: {multiplicities}')
        return EXIT_OK if result else EXIT_NO
