from trails.services.recognition import is_k_trail, min_contained_k_bounds, min_trail_k
from trails.utils.commands import TrailCommand


class Command(TrailCommand):
    help = 'Print the smallest k for which the multigraph is a k-trail.'

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file.')

    def run(self, graph, **options):
        g = self.load_graph(graph)
        k = min_trail_k(g)
        low, high = min_contained_k_bounds(g)
        witness = self.verified_witness(g, is_k_trail(g, k).witness, k)
        payload = {'min_k': k, 'contained_k_candidates': [low, high], 'witness': witness}
        self.emit(payload, str(k))
