from unittest import skipUnless

from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from trails.services.instances import iter_connected_multigraphs
from trails.services.preimage import verify_witness
from trails.services.recognition import (feasible_split, is_k_trail, min_contained_k_bounds, min_trail_k,
                                         require_k)
from trails.tests import factories
from trails.utils.multigraph import MultiGraph


def small_graphs():
    yield from iter_connected_multigraphs(2, 4)
    yield from iter_connected_multigraphs(3, 4)
    if settings.KTRAILS_SLOW_TESTS:
        yield from iter_connected_multigraphs(4, 5)
    else:
        yield from iter_connected_multigraphs(4, 4)


class IsKTrailTests(SimpleTestCase):

    def test_cycles_are_2_trails(self):
        for n in range(3, 7):
            result = is_k_trail(factories.cycle(n), 2)
            self.assertTrue(result)
            self.assertTrue(verify_witness(factories.cycle(n), result.witness, 2))

    def test_claw_is_not_a_2_trail(self):
        result = is_k_trail(factories.star(3), 2)
        self.assertFalse(result)
        self.assertIsNone(result.witness)
        self.assertEqual(result.multiplicities, (2, 1, 1, 1))

    def test_sample_graph(self):
        g = factories.sample_graph()
        result = is_k_trail(g, 3)
        self.assertTrue(result)
        self.assertTrue(verify_witness(g, result.witness, 3))
        self.assertTrue(result.witness.is_tree)
        self.assertFalse(is_k_trail(g, 2))

    def test_single_edge_is_a_1_trail(self):
        self.assertTrue(is_k_trail(factories.single_edge(), 1))
        self.assertFalse(is_k_trail(factories.path(3), 1))

    def test_invalid_input(self):
        with self.assertRaises(ValidationError):
            is_k_trail(factories.cycle(3), 0)
        with self.assertRaises(ValidationError) as ctx:
            is_k_trail(MultiGraph(4, ((0, 1), (2, 3))), 2)
        self.assertEqual(ctx.exception.code, 'disconnected')
        with self.assertRaises(ValidationError):
            require_k(True)

    def test_max_degree_always_suffices(self):
        for g in factories.random_graphs(30, max_n=6, max_extra=4, seed=31):
            result = is_k_trail(g, g.max_degree)
            self.assertTrue(result)
            self.assertTrue(verify_witness(g, result.witness, g.max_degree))

    def test_euler_criterion_for_2_trails(self):
        for g in small_graphs():
            odd = sum(1 for d in g.degrees if d % 2)
            with self.subTest(edges=g.edges):
                self.assertEqual(bool(is_k_trail(g, 2)), odd in (0, 2))

    @skipUnless(settings.KTRAILS_SLOW_TESTS, '2000 random multigraphs with up to 5 vertices and 7 edges')
    def test_euler_criterion_at_full_size(self):
        for g in factories.acceptance_graphs(2000, seed=53):
            odd = sum(1 for d in g.degrees if d % 2)
            with self.subTest(edges=g.edges):
                result = is_k_trail(g, 2)
                self.assertEqual(bool(result), odd in (0, 2))
                if result:
                    self.assertTrue(verify_witness(g, result.witness, 2))

    def test_monotone_in_k(self):
        for g in small_graphs():
            answers = [bool(is_k_trail(g, k)) for k in range(1, g.max_degree + 1)]
            self.assertEqual(answers, sorted(answers))


class FeasibleSplitTests(SimpleTestCase):

    def test_zero_split(self):
        for g in factories.random_graphs(15, seed=32):
            self.assertTrue(feasible_split(g, (0,) * g.n))

    def test_cycle_splits(self):
        g = factories.cycle(3)
        self.assertTrue(feasible_split(g, (1, 0, 0)))
        result = feasible_split(g, (1, 1, 1))
        self.assertFalse(result)
        self.assertLess(result.size, result.needed)

    def test_sample_split(self):
        self.assertTrue(feasible_split(factories.sample_graph(), (0, 1, 1, 0, 1, 0, 1)))

    def test_split_beyond_degree(self):
        self.assertFalse(feasible_split(factories.cycle(3), (2, 0, 0)))
        with self.assertRaises(ValidationError):
            feasible_split(factories.cycle(3), (0, 0))


class MinTrailKTests(SimpleTestCase):

    def test_known_values(self):
        self.assertEqual(min_trail_k(factories.single_edge()), 1)
        self.assertEqual(min_trail_k(factories.path(3)), 2)
        self.assertEqual(min_trail_k(factories.star(3)), 3)
        self.assertEqual(min_trail_k(factories.complete(4)), 3)
        self.assertEqual(min_trail_k(factories.sample_graph()), 3)

    def test_contained_bounds(self):
        self.assertEqual(min_contained_k_bounds(factories.complete(4)), (2, 3))
        self.assertEqual(min_contained_k_bounds(factories.single_edge()), (1, 1))
