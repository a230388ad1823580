from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from trails.services.instances import gen_random_weights
from trails.tests import factories
from trails.utils.graph_io import parse_graph, render_dot, render_graph
from trails.utils.multigraph import MultiGraph, WeightedMultiGraph, degree, is_connected, unweighted


class MultiGraphTests(SimpleTestCase):

    def test_cycle_degrees(self):
        g = factories.cycle(3)
        self.assertEqual([degree(g, v) for v in range(3)], [2, 2, 2])

    def test_loop_counts_twice(self):
        g = MultiGraph(2, ((0, 0), (0, 1)))
        self.assertEqual(degree(g, 0), 3)
        self.assertEqual(degree(MultiGraph(2, ((0, 0), (1, 1))), 1), 2)

    def test_sample_degrees(self):
        g = factories.sample_graph()
        self.assertEqual(g.degrees, (3, 4, 4, 3, 4, 1, 3))
        self.assertEqual(g.max_degree, 4)

    def test_handshake(self):
        for g in factories.random_graphs(30, seed=7):
            self.assertEqual(sum(g.degrees), 2 * g.m)

    def test_degree_out_of_range(self):
        with self.assertRaises(ValidationError):
            degree(factories.cycle(3), 5)

    def test_connectivity(self):
        self.assertTrue(is_connected(factories.path(2)))
        self.assertFalse(is_connected(MultiGraph(4, ((0, 1), (2, 3)))))
        self.assertFalse(factories.cycle(4).is_connected({0, 2}))

    def test_invalid_construction(self):
        with self.assertRaises(ValidationError):
            MultiGraph(1, ())
        with self.assertRaises(ValidationError):
            MultiGraph(2, ((0, 2),))

    def test_edge_subgraph_renumbers(self):
        g = factories.cycle(4)
        sub = g.edge_subgraph({3, 1})
        self.assertEqual(sub.n, 4)
        self.assertEqual(sub.edges, ((1, 2), (3, 0)))

    def test_weights(self):
        wg = WeightedMultiGraph(factories.cycle(3), (1, -2, 5))
        self.assertEqual(wg.weight(), 4)
        self.assertEqual(wg.weight({1, 2}), 3)
        self.assertIs(unweighted(wg), wg.graph)
        with self.assertRaises(ValidationError):
            WeightedMultiGraph(factories.cycle(3), (1, 2))


class GraphFormatTests(SimpleTestCase):

    def test_parse_single_edge(self):
        self.assertEqual(parse_graph('p ktrail 2 1\ne 0 1\n'), MultiGraph(2, ((0, 1),)))

    def test_parse_skips_comments(self):
        g = parse_graph('# header\n\np ktrail 3 2\n# body\ne 0 1\ne 1 2\n')
        self.assertEqual(g.edges, ((0, 1), (1, 2)))

    def test_parse_weighted(self):
        wg = parse_graph('p ktrail 2 2\ne 0 1 -3\ne 1 1 4\n')
        self.assertIsInstance(wg, WeightedMultiGraph)
        self.assertEqual(wg.weights, (-3, 4))

    def test_parse_errors(self):
        cases = {
            'p ktrail 1 0\n': 'line 1',
            'p ktrail 2 1\ne 0 2\n': 'line 2',
            'p ktrail 3 2\ne 0 1\n': 'line',
            'p ktrail 3 2\ne 0 1 5\ne 1 2\n': 'line 3',
            'e 0 1\n': 'line 1',
            'p ktrail 2 1\ne 0 x\n': 'line 2',
        }
        for text, where in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ValidationError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.code, 'parse')
                self.assertIn(where, ctx.exception.messages[0])

    def test_parse_render_round_trip(self):
        for g in factories.random_graphs(60, max_n=7, max_extra=5, seed=11):
            self.assertEqual(parse_graph(render_graph(g)), g)
            wg = gen_random_weights(g, -5, 5, seed=g.m)
            self.assertEqual(parse_graph(render_graph(wg)), wg)

    def test_sample_file(self):
        self.assertEqual(parse_graph((factories.DATA / 'sample.graph').read_text()),
                         factories.sample_graph())

    def test_dot_keeps_loops_and_parallels(self):
        dot = render_dot(factories.sample_graph())
        self.assertIn('6 -- 6', dot)
        self.assertEqual(dot.count('0 -- 2'), 2)
        self.assertTrue(dot.startswith('graph G {'))
