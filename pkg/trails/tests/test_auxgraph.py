import random

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from trails.services.auxgraph import AuxTree, build_aux, tree_to_witness, witness_to_tree
from trails.services.preimage import canonical_key, identity_witness, split_into_tree, verify_witness
from trails.tests import factories
from trails.utils.multigraph import MultiGraph


class BuildAuxTests(SimpleTestCase):

    def test_single_edge(self):
        aux = build_aux(factories.single_edge())
        self.assertEqual(aux.gprime.n, 2)
        self.assertEqual(len(aux.ebar), 1)
        self.assertEqual(len(aux.k_edges), 0)

    def test_cycle(self):
        aux = build_aux(factories.cycle(3))
        self.assertEqual(aux.gprime.n, 6)
        self.assertEqual(len(aux.ebar), 3)
        self.assertEqual([len(ids) for ids in aux.kpart], [1, 1, 1])

    def test_sample_parts_follow_degrees(self):
        g = factories.sample_graph()
        aux = build_aux(g)
        self.assertEqual(aux.gprime.n, 22)
        self.assertEqual([len(slots) for slots in aux.part], list(g.degrees))
        self.assertEqual([len(ids) for ids in aux.kpart], [d * (d - 1) // 2 for d in g.degrees])

    def test_loop_slots_share_a_vertex(self):
        aux = build_aux(MultiGraph(2, ((0, 0), (0, 1))))
        self.assertEqual(aux.part[0], (0, 1, 2))
        self.assertEqual(aux.gprime.edges[0], (0, 1))
        self.assertEqual({aux.slot_vertex(0), aux.slot_vertex(1)}, {0})
        self.assertEqual(len(aux.kpart[0]), 3)

    def test_k_edges_stay_inside_parts(self):
        for g in factories.random_graphs(20, seed=2):
            aux = build_aux(g)
            for x in aux.k_edges:
                s, t = aux.gprime.edges[x]
                self.assertEqual(aux.slot_vertex(s), aux.slot_vertex(t))
                self.assertEqual(aux.owner[x], aux.slot_vertex(s))

    def test_disconnected(self):
        with self.assertRaises(ValidationError) as ctx:
            build_aux(MultiGraph(4, ((0, 1), (2, 3))))
        self.assertEqual(ctx.exception.code, 'disconnected')


class TreeWitnessTests(SimpleTestCase):

    def test_cycle_without_one_k_edge(self):
        g = factories.cycle(3)
        aux = build_aux(g)
        dropped = aux.kpart[2][0]
        wit = tree_to_witness(aux, AuxTree(frozenset(range(6)) - {dropped}))
        self.assertEqual(wit.multiplicities(3), (1, 1, 2))
        self.assertTrue(wit.is_tree)
        self.assertEqual(wit.max_degree, 2)
        self.assertTrue(verify_witness(g, wit, 2))

    def test_all_k_edges_on_a_path(self):
        g = factories.path(3)
        aux = build_aux(g)
        wit = tree_to_witness(aux, AuxTree(frozenset(range(aux.gprime.m))))
        self.assertEqual(wit.multiplicities(3), (1, 1, 1))
        self.assertEqual(canonical_key(wit), canonical_key(identity_witness(g)))

    def test_rejects_non_trees(self):
        aux = build_aux(factories.cycle(3))
        with self.assertRaises(ValidationError):
            tree_to_witness(aux, AuxTree(frozenset(range(6))))
        with self.assertRaises(ValidationError):
            tree_to_witness(aux, AuxTree(frozenset({1, 2, 3, 4, 5})))

    def test_random_trees_give_valid_tree_witnesses(self):
        rng = random.Random(4)
        for g in factories.random_graphs(30, seed=4):
            aux = build_aux(g)
            t = factories.random_aux_tree(aux, rng)
            wit = tree_to_witness(aux, t)
            self.assertTrue(wit.is_tree)
            self.assertTrue(verify_witness(g, wit))
            kept = [sum(1 for x in ids if x in t.edges) for ids in aux.kpart]
            self.assertEqual(sum(kept), g.m - 1)
            self.assertEqual(wit.multiplicities(g.n), tuple(d - c for d, c in zip(g.degrees, kept)))

    def test_round_trip(self):
        rng = random.Random(8)
        for g in factories.random_graphs(30, seed=8):
            aux = build_aux(g)
            wit = tree_to_witness(aux, factories.random_aux_tree(aux, rng))
            back = tree_to_witness(aux, witness_to_tree(aux, wit))
            self.assertEqual(canonical_key(back), canonical_key(wit))

    def test_sample_witness_to_tree(self):
        g = factories.sample_graph()
        aux = build_aux(g)
        wit = split_into_tree(g, factories.degree3_witness())
        t = witness_to_tree(aux, wit)
        self.assertEqual(len(t.edges), aux.gprime.n - 1)
        for v, ids in enumerate(aux.kpart):
            self.assertEqual(sum(1 for x in ids if x in t.edges),
                             g.degrees[v] - wit.multiplicities(7)[v])

    def test_witness_to_tree_rejects_cycles(self):
        g = factories.cycle(3)
        with self.assertRaises(ValidationError):
            witness_to_tree(build_aux(g), identity_witness(g))
