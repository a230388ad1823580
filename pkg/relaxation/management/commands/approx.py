import json
from pathlib import Path

from relaxation.serializers import (IterationRecordSerializer, NoKTrailCertificateSerializer,
                                    TrailApproximationSerializer)
from relaxation.services.simplex import render_lp
from relaxation.services.weighted import NoKTrailCertificate, approx_min_weight_trail
from trails.utils.commands import EXIT_NO, EXIT_OK, TrailCommand
from trails.utils.multigraph import WeightedMultiGraph
from trails.validators import k_validator


class Command(TrailCommand):
    help = ('Find a contained (2k-1)-trail no heavier than the cheapest contained k-trail, '
            'or certify that there is no contained k-trail (exit 1).')

    def add_command_arguments(self, parser):
        parser.add_argument('graph', help='Graph file; unweighted files use unit weights.')
        parser.add_argument('-k', type=int, required=True)
        parser.add_argument('--trace', help='Write one JSON line per relaxation iteration.')
        parser.add_argument('--lp-dump', help='Write the last LP in CPLEX LP format.')
        parser.add_argument('--separation-limit', type=int,
                            help='Largest slot count separated exhaustively instead of by min cut.')

    def run(self, graph, k, trace=None, lp_dump=None, separation_limit=None, **options):
        g = self.load_graph(graph, weighted=True)
        if not isinstance(g, WeightedMultiGraph):
            g = WeightedMultiGraph(g, (1,) * g.m)
        result = approx_min_weight_trail(g, k_validator(k, least=2), exhaustive_limit=separation_limit)
        if lp_dump:
            Path(lp_dump).write_text(render_lp(result.problem))
        if isinstance(result, NoKTrailCertificate):
            payload = NoKTrailCertificateSerializer(result).data
            self.emit(payload, f'no {k}-trail is contained (infeasibility {payload["infeasibility"]})')
            return EXIT_NO
        witness = self.verified_witness(g.graph, result.witness, result.bound, result.edges)
        if trace:
            lines = (json.dumps(IterationRecordSerializer(record).data) for record in result.trace)
            Path(trace).write_text(''.join(line + '\n' for line in lines))
        payload = TrailApproximationSerializer(result).data
        payload['witness'] = witness
        edges = ' '.join(map(str, sorted(result.edges)))
        self.emit(payload, f'weight {result.weight} (LP {payload["lp_value"]}), bound {result.bound}\n'
                           f'edges: {edges}')
        return EXIT_OK
