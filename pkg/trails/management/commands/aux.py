from trails.services.auxgraph import aux_dot_clusters, aux_slot_labels, build_aux
from trails.utils.commands import TrailCommand
from trails.utils.graph_io import render_dot, render_graph


class Command(TrailCommand):
    help = "Build the slot graph G' of a multigraph and print a summary, a dump or DOT."

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file.')
        parser.add_argument('--dump', action='store_true', help="Print G' in the graph format.")
        parser.add_argument('--dot', action='store_true', help="Print G' as DOT with one cluster per vertex.")

    def run(self, graph, dump=False, dot=False, **options):
        aux = build_aux(self.load_graph(graph))
        payload = {
            'slots': aux.gprime.n,
            'ebar': aux.graph.m,
            'k_edges': aux.gprime.m - aux.graph.m,
            'slot_of': [list(pair) for pair in aux.slot_of],
            'kpart': [list(ids) for ids in aux.kpart],
        }
        if dot:
            text = render_dot(aux.gprime, name='Gprime', clusters=aux_dot_clusters(aux),
                              labels=aux_slot_labels(aux), bold_edges=aux.ebar)
        elif dump:
            comments = [f'# slot {slot} -> {v} (edge {e})' for slot, (v, e) in enumerate(aux.slot_of)]
            text = render_graph(aux.gprime) + '\n'.join(comments)
        else:
            text = f"slots {payload['slots']}, E-bar edges {payload['ebar']}, K edges {payload['k_edges']}"
        self.emit(payload, text)
