from trails.serializers import SubgraphSerializer, WitnessSerializer
from trails.services.containment import extend_to_full_trail
from trails.utils.commands import TrailCommand
from trails.validators import k_validator, read_json_file


class Command(TrailCommand):
    help = 'Extend a k-trail contained in the graph to a (k+1)-tree witness of the whole graph.'

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file.')
        parser.add_argument('-k', type=int, required=True, help='Bound of the given witness.')
        parser.add_argument('--subgraph', required=True, help='JSON file {"edges": [...]} naming U.')
        parser.add_argument('--witness', required=True, help='Witness JSON for (V, U).')
        parser.add_argument('--dot', action='store_true', help='Write the witness graph as DOT.')

    def run(self, graph, k, subgraph, witness, dot=False, **options):
        g = self.load_graph(graph)
        subset = SubgraphSerializer(data=read_json_file(subgraph), context={'edge_count': g.m})
        subset.is_valid(raise_exception=True)
        given = WitnessSerializer(data=read_json_file(witness))
        given.is_valid(raise_exception=True)
        result = extend_to_full_trail(g, subset.validated_data['edges'], given.to_witness(), k_validator(k))
        payload = self.verified_witness(g, result.witness, result.bound)
        if dot:
            self.emit(text=self.witness_dot(result.witness))
        else:
            self.options['as_json'] = True
            self.emit({'bound': result.bound, 'witness': payload})
