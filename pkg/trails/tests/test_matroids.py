import random
from itertools import combinations, product

from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from trails.services.auxgraph import build_aux
from trails.services.matroids import (GraphicMatroid, PartitionMatroid, capacity_matroid,
                                      contracted_graphic_matroid, matroid_intersection,
                                      max_weight_basis_alpha, max_weight_split, split_rank)
from trails.services.oracles import oracle_feasible_split
from trails.services.recognition import feasible_split
from trails.tests import factories
from trails.utils.multigraph import MultiGraph


def brute_force_common(m1, m2):
    ground = sorted(m1.ground)
    for size in range(len(ground), -1, -1):
        for items in combinations(ground, size):
            if m1.is_independent(items) and m2.is_independent(items):
                return size
    return 0


def small_instances(count, seed):
    rng = random.Random(seed)
    for g in factories.random_graphs(count, max_n=4, max_extra=2, seed=seed):
        aux = build_aux(g)
        if len(aux.k_edges) > 10:
            continue
        capacity = {v: rng.randint(0, max(0, d - 1)) for v, d in enumerate(g.degrees)}
        yield aux, contracted_graphic_matroid(aux), capacity_matroid(aux, capacity)


class MatroidTests(SimpleTestCase):

    def test_graphic_rank(self):
        m = GraphicMatroid(factories.cycle(4))
        self.assertEqual(m.rank(), 3)
        self.assertFalse(m.is_independent(range(4)))
        contracted = GraphicMatroid(factories.cycle(4), contracted={0})
        self.assertEqual(contracted.rank(), 2)
        self.assertFalse(GraphicMatroid(MultiGraph(2, ((0, 0),))).is_independent({0}))

    def test_partition_rank(self):
        m = PartitionMatroid({'a': 0, 'b': 0, 'c': 1}, {0: 1, 1: 5})
        self.assertEqual(m.rank(), 2)
        self.assertTrue(m.is_independent({'a', 'c'}))
        self.assertFalse(m.is_independent({'a', 'b'}))
        with self.assertRaises(ValidationError):
            PartitionMatroid({'a': 0}, {0: -1})


class IntersectionTests(SimpleTestCase):

    def test_zero_capacities(self):
        aux = build_aux(factories.sample_graph())
        result = matroid_intersection(contracted_graphic_matroid(aux),
                                      capacity_matroid(aux, dict.fromkeys(range(7), 0)))
        self.assertEqual(len(result), 0)

    def test_full_capacities_reach_rank(self):
        for g in factories.random_graphs(20, seed=12):
            aux = build_aux(g)
            capacity = {v: d for v, d in enumerate(g.degrees)}
            result = matroid_intersection(contracted_graphic_matroid(aux), capacity_matroid(aux, capacity))
            self.assertEqual(len(result), g.m - 1)

    def test_cycle_split_capacities(self):
        aux = build_aux(factories.cycle(3))
        result = matroid_intersection(contracted_graphic_matroid(aux),
                                      capacity_matroid(aux, {0: 0, 1: 1, 2: 1}))
        self.assertEqual(len(result), 2)

    def test_matches_brute_force_and_cut(self):
        for aux, m1, m2 in small_instances(40, seed=21):
            result = matroid_intersection(m1, m2)
            self.assertTrue(m1.is_independent(result.common))
            self.assertTrue(m2.is_independent(result.common))
            self.assertEqual(len(result), brute_force_common(m1, m2))
            self.assertEqual(m1.rank(result.cut) + m2.rank(m1.ground - result.cut), len(result))

    def test_ground_mismatch(self):
        with self.assertRaises(ValidationError):
            matroid_intersection(GraphicMatroid(factories.cycle(3)), PartitionMatroid({0: 0}, {0: 1}))


class SplitPolymatroidTests(SimpleTestCase):

    def test_zero_weights_fill_the_tree(self):
        for g in factories.random_graphs(15, seed=13):
            basis = max_weight_basis_alpha(build_aux(g), dict.fromkeys(range(g.n), 0))
            self.assertEqual(sum(basis.alpha), g.m - 1)

    def test_weight_pulls_k_edges(self):
        basis = max_weight_basis_alpha(build_aux(factories.cycle(3)), {0: 1, 1: 0, 2: 0})
        self.assertEqual(basis.alpha[0], 1)
        negative = max_weight_basis_alpha(build_aux(factories.cycle(3)), dict.fromkeys(range(3), -1))
        self.assertEqual(sum(negative.alpha), 2)

    def test_unit_objective_gives_cyclomatic_number(self):
        self.assertEqual(sum(max_weight_split(build_aux(factories.cycle(3)), dict.fromkeys(range(3), 1))), 1)
        for g in factories.random_graphs(200 if settings.KTRAILS_SLOW_TESTS else 20, seed=14):
            aux = build_aux(g)
            self.assertEqual(sum(max_weight_split(aux, dict.fromkeys(range(g.n), 1))), g.m - g.n + 1)
            self.assertEqual(split_rank(aux, range(g.n)), g.m - g.n + 1)
        self.assertEqual(sum(max_weight_split(build_aux(factories.star(3)), dict.fromkeys(range(4), 1))), 0)

    def test_negative_objective(self):
        with self.assertRaises(ValidationError):
            max_weight_split(build_aux(factories.cycle(3)), {0: -1, 1: 0, 2: 0})

    def test_max_splits_are_feasible_and_down_closed(self):
        rng = random.Random(15)
        for g in factories.random_graphs(15, max_n=4, seed=15):
            aux = build_aux(g)
            mu = max_weight_split(aux, {v: rng.randint(0, 3) for v in range(g.n)})
            self.assertTrue(feasible_split(g, mu, aux))
            lower = tuple(rng.randint(0, x) for x in mu)
            self.assertTrue(feasible_split(g, lower, aux))

    def test_max_split_is_optimal_among_all_feasible_splits(self):
        rng = random.Random(16)
        for g in factories.random_graphs(12, max_n=4, max_extra=2, seed=16):
            aux = build_aux(g)
            feasible = [mu for mu in product(*(range(d) for d in g.degrees)) if oracle_feasible_split(g, mu)]
            for _ in range(3):
                c = {v: rng.randint(0, 5) for v in range(g.n)}
                with self.subTest(edges=g.edges, c=c):
                    mu = max_weight_split(aux, c)
                    self.assertIn(mu, feasible)
                    self.assertEqual(sum(c[v] * mu[v] for v in range(g.n)),
                                     max(sum(c[v] * x[v] for v in range(g.n)) for x in feasible))
