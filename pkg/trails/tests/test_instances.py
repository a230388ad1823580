from collections import Counter
from itertools import combinations
from unittest import skipUnless

import networkx as nx
from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from trails.services.containment import oracle_contains_k_trail
from trails.services.instances import (CUBIC_GRAPHS, gen_gap_instance, gen_hardness_gadget,
                                       gen_random_multigraph, gen_random_weights, iter_connected_multigraphs,
                                       iter_cubic_graphs)
from trails.services.oracles import oracle_has_hamiltonian_path
from trails.tests import factories


class GadgetTests(SimpleTestCase):

    def test_k2_keeps_the_cubic_graph(self):
        k4 = factories.complete(4)
        self.assertEqual(gen_hardness_gadget(k4, 2), k4)

    def test_sizes(self):
        gadget = gen_hardness_gadget(factories.complete(4), 4)
        self.assertEqual((gadget.n, gadget.m), (12, 14))
        gadget = gen_hardness_gadget(CUBIC_GRAPHS['k33'](), 3)
        self.assertEqual((gadget.n, gadget.m), (12, 15))
        self.assertEqual(gadget.degrees[:6], (4,) * 6)

    def test_rejects_bad_input(self):
        with self.assertRaises(ValidationError):
            gen_hardness_gadget(factories.cycle(4), 3)
        with self.assertRaises(ValidationError):
            gen_hardness_gadget(factories.complete(4), 1)

    def test_catalog_is_every_connected_cubic_graph(self):
        catalog = dict(iter_cubic_graphs())
        self.assertEqual(Counter(g.n for g in catalog.values()), {4: 1, 6: 2, 8: 5})
        self.assertEqual({name for name, _ in iter_cubic_graphs(6)}, {'k4', 'k33', 'prism'})
        self.assertLessEqual({'cube', 'wagner'}, set(catalog))
        self.assertNotIn('two_k4', catalog)
        graphs = [nx.Graph(g.edges) for g in catalog.values()]
        for g, h in combinations(graphs, 2):
            self.assertFalse(g.order() == h.order() and nx.is_isomorphic(g, h))
        for g in catalog.values():
            self.assertEqual(set(g.degrees), {3})
            self.assertTrue(g.is_connected())
            self.assertEqual(gen_hardness_gadget(g, 2), g)

    def test_containment_follows_hamiltonicity(self):
        cases = [('k4', 2), ('k4', 3), ('k4', 4), ('k33', 2), ('k33', 3), ('prism', 2)]
        if settings.KTRAILS_SLOW_TESTS:
            cases = [(name, k) for name, _ in iter_cubic_graphs() for k in (2, 3, 4)]
        catalog = dict(iter_cubic_graphs())
        for name, k in cases:
            cubic = catalog[name]
            with self.subTest(graph=name, k=k):
                self.assertEqual(bool(oracle_contains_k_trail(gen_hardness_gadget(cubic, k), k)),
                                 oracle_has_hamiltonian_path(cubic))

    def test_disconnected_cubic_graph_has_no_trail(self):
        two_k4 = CUBIC_GRAPHS['two_k4']()
        self.assertFalse(oracle_has_hamiltonian_path(two_k4))
        self.assertFalse(oracle_contains_k_trail(gen_hardness_gadget(two_k4, 2), 2))


class GapInstanceTests(SimpleTestCase):

    def test_shape(self):
        wg = gen_gap_instance(3, 6)
        g = wg.graph
        self.assertEqual((g.n, g.m), (16, 20))
        self.assertEqual(g.degrees[:6], (5,) * 6)
        self.assertEqual(set(g.degrees[6:]), {1})
        self.assertEqual(set(wg.weights), {-1})

    def test_every_ring_vertex_reaches_2k_minus_1(self):
        g = gen_gap_instance(4, 5, weight=2).graph
        self.assertEqual(g.degrees[:5], (7,) * 5)
        self.assertTrue(g.is_connected())

    def test_rejects_bad_parameters(self):
        with self.assertRaises(ValidationError):
            gen_gap_instance(2, 5)
        with self.assertRaises(ValidationError):
            gen_gap_instance(4, 3)

    @skipUnless(settings.KTRAILS_SLOW_TESTS, 'exhaustive search over 1024 ring subsets')
    def test_contains_no_k_trail(self):
        self.assertFalse(oracle_contains_k_trail(gen_gap_instance(3, 6).graph, 3))

    def test_pendant_counts(self):
        for k, n in ((3, 3), (3, 6), (4, 5), (5, 7)):
            with self.subTest(k=k, n=n):
                g = gen_gap_instance(k, n).graph
                pendants = Counter(min(g.edges[e]) for e in range(g.m) if max(g.edges[e]) >= n)
                expected = [2 * k - 3, 2 * k - 4] + [2 * k - 5] * (n - 3) + [2 * k - 4]
                self.assertEqual([pendants[v] for v in range(n)], expected)
                self.assertEqual(g.n, n + sum(expected))


class RandomInstanceTests(SimpleTestCase):

    def test_smallest(self):
        g = gen_random_multigraph(2, 1, seed=1)
        self.assertEqual((g.n, g.m, g.degrees), (2, 1, (1, 1)))

    def test_trees_and_seeds(self):
        tree = gen_random_multigraph(6, 5, seed=3)
        self.assertTrue(tree.is_connected())
        self.assertEqual(tree.m, 5)
        self.assertEqual(gen_random_multigraph(6, 9, 0.3, 0.3, seed=4),
                         gen_random_multigraph(6, 9, 0.3, 0.3, seed=4))

    def test_loops_only(self):
        g = gen_random_multigraph(3, 6, loop_p=1.0, seed=5)
        self.assertEqual(sum(1 for e in range(g.m) if g.is_loop(e)), 4)

    def test_rejects_too_few_edges(self):
        with self.assertRaises(ValidationError):
            gen_random_multigraph(4, 2)

    def test_weights_in_range(self):
        wg = gen_random_weights(factories.cycle(5), -2, 3, seed=6)
        self.assertTrue(all(-2 <= w <= 3 for w in wg.weights))

    def test_connected_enumeration(self):
        self.assertEqual(len(list(iter_connected_multigraphs(2, 2))), 4)
        for g in iter_connected_multigraphs(3, 3):
            self.assertTrue(g.is_connected())
