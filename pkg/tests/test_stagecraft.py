# tests/test_stagecraft.py
import unittest
from itertools import product

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.fin_graph import FinGraph
from src.models.ordinal import Comparison
from src.models.point import Point
from src.utils.graph_algorithms import NotBipartite, is_proper_edge_coloring, is_proper_two_coloring
from src.utils.stage_registry import RegistryCollision, StageRegistry, Unregistered
from src.utils.stagecraft import (InvalidColorPair, WrongLength, edge1_gadget, edge1_length, hat_strategy,
                                  stage_edge_coloring, stage_perfect_matching, stage_two_coloring,
                                  wellorder_compare, wo_gadget)
from tests.oracles import eventually_periodic_points, two_colorings

ORDERED_PAIRS = [(a, b) for a in range(4) for b in range(4) if a != b]


class TestStageRegistry(unittest.TestCase):
    def setUp(self):
        self.registry = StageRegistry()

    def tearDown(self):
        self.registry.close()

    def test_indices_count_up_within_a_stage(self):
        self.assertEqual(self.registry.register("a"), (0, 0))
        self.assertEqual(self.registry.register("b"), (0, 1))
        self.assertEqual(self.registry.advance_stage(), 1)
        self.assertEqual(self.registry.register("c"), (1, 0))
        self.assertEqual(self.registry.assign("d", 0, 5), (0, 5))
        self.assertEqual(self.registry.register("e", stage=0), (0, 6))
        self.assertEqual([entry[0] for entry in self.registry.entries()], ["a", "b", "d", "e", "c"])

    def test_pairs_are_permanent(self):
        self.registry.register("a")
        with self.assertRaises(RegistryCollision):
            self.registry.register("a")
        with self.assertRaises(RegistryCollision):
            self.registry.assign("z", 0, 0)
        self.assertNotIn("z", self.registry)
        self.assertEqual(self.registry.lookup("a"), (0, 0))
        self.assertEqual(self.registry.register("y"), (0, 1))

    def test_unknown_objects(self):
        with self.assertRaises(Unregistered):
            self.registry.lookup("nobody")
        with self.assertRaises(ValueError):
            self.registry.assign("neg", -1, 0)

    def test_audit_trail(self):
        self.registry.register("a")
        self.registry.advance_stage()
        self.registry.note("COLOR", "Partition", "a", "Colored 0.")
        self.assertEqual([action for action, _ in self.registry.audit_trail()], ["ASSIGN", "ADVANCE", "COLOR"])
        self.assertIn("(0, 0)", self.registry.audit_trail()[0][1])

    def test_wellorder_compare(self):
        self.registry.register("late", stage=2)
        self.registry.register("early")
        self.registry.register("next")
        self.assertIs(wellorder_compare(self.registry, "early", "late"), Comparison.LESS)
        self.assertIs(wellorder_compare(self.registry, "late", "next"), Comparison.GREATER)
        self.assertIs(wellorder_compare(self.registry, "next", "next"), Comparison.EQUAL)


class TestHats(unittest.TestCase):
    def test_one_wrong_guess(self):
        outcome = hat_strategy(Point.parse("010;1"), 20)
        self.assertEqual(outcome.errors, 1)
        self.assertEqual(outcome.wrong, (0,))

    def test_exhaustive_small_hats(self):
        for size, length in product(range(7), range(1, 3)):
            for prefix, period in product(product("01", repeat=size), product("01", repeat=length)):
                hats = Point("".join(prefix), "".join(period))
                outcome = hat_strategy(hats, 20)
                self.assertLessEqual(outcome.errors, 1, str(hats))
                self.assertTrue(set(outcome.wrong) <= {0}, str(hats))

    @given(eventually_periodic_points())
    def test_only_the_first_prisoner_can_be_wrong(self, hats):
        self.assertTrue(set(hat_strategy(hats, 20).wrong) <= {0})

    def test_all_correct_when_parity_is_even(self):
        self.assertEqual(hat_strategy(Point.parse("10;1"), 10).errors, 0)


class TestGadgets(unittest.TestCase):
    def test_wo_gadget_defeats_every_challenge(self):
        for colors in product((0, 1), repeat=2):
            with self.subTest(colors=colors):
                gadget = wo_gadget(colors, ("u", "v"))
                edges = len(gadget.fragment.edges)
                self.assertEqual(edges, 3 if colors[0] == colors[1] else 2)
                self.assertFalse(gadget.extendable)
                self.assertLessEqual(gadget.fragment.max_degree, 2)
                self.assertFalse(any(c["u"] == colors[0] and c["v"] == colors[1]
                                     for c in two_colorings(gadget.fragment)))

    def test_wo_gadget_avoids_taken_names(self):
        gadget = wo_gadget((0, 1), ("fresh0", "v"))
        self.assertIn("fresh1", gadget.fragment.vertices)

    def test_edge1_length(self):
        self.assertEqual(edge1_length(3), 13)
        self.assertEqual(edge1_length(4), 31)

    def test_edge1_with_a_single_category(self):
        gadget = edge1_gadget(3, [(0, 1)] * 13)
        self.assertEqual(gadget.category, (0, 1))
        self.assertEqual(gadget.centers, ("c0", "c1", "c2"))
        self.assertEqual(gadget.fragment.degree(gadget.hub), 3)
        self.assertFalse(gadget.extendable)

    def test_edge1_checks_its_input(self):
        with self.assertRaises(WrongLength):
            edge1_gadget(3, [(0, 1)] * 12)
        with self.assertRaises(InvalidColorPair):
            edge1_gadget(3, [(0, 0)] + [(0, 1)] * 12)
        with self.assertRaises(InvalidColorPair):
            edge1_gadget(3, [(0, 4)] + [(0, 1)] * 12)
        with self.assertRaises(ValueError):
            edge1_gadget(2, [(0, 1)] * edge1_length(2))

    @given(st.lists(st.sampled_from(ORDERED_PAIRS), min_size=13, max_size=13))
    @settings(max_examples=25, deadline=None)
    def test_edge1_defeats_every_challenge(self, pairs):
        gadget = edge1_gadget(3, pairs)
        self.assertEqual(gadget.fragment.degree(gadget.hub), 3)
        self.assertFalse(gadget.extendable)
        for center in gadget.centers:
            self.assertEqual(tuple(sorted(pairs[int(center[1:])])), gadget.category)


class TestStageOrderedGraphs(unittest.TestCase):
    def setUp(self):
        self.registry = StageRegistry()

    def tearDown(self):
        self.registry.close()

    def test_two_coloring_starts_at_the_earliest_vertex(self):
        g = FinGraph("abcde", [("a", "b"), ("b", "c"), ("d", "e")])
        for name in "cabed":
            self.registry.register(name)
        coloring = stage_two_coloring(g, self.registry)
        self.assertTrue(is_proper_two_coloring(g, coloring))
        self.assertEqual((coloring["c"], coloring["b"], coloring["e"], coloring["d"]), (0, 1, 0, 1))

    def test_two_coloring_reports_odd_cycles(self):
        g = FinGraph("abc", [("a", "b"), ("b", "c"), ("c", "a")])
        for name in "abc":
            self.registry.register(name)
        with self.assertRaises(NotBipartite):
            stage_two_coloring(g, self.registry)

    def test_perfect_matching_per_component(self):
        g = FinGraph("abcdxy", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("x", "y")])
        for name in "abcdxy":
            self.registry.register(name)
        self.assertEqual(stage_perfect_matching(g, self.registry),
                         frozenset({("a", "d"), ("b", "c"), ("x", "y")}))

    def test_unregistered_vertices_are_refused(self):
        with self.assertRaises(Unregistered):
            stage_two_coloring(FinGraph("ab", [("a", "b")]), self.registry)

    def test_edge_coloring(self):
        g = FinGraph.from_networkx(nx.petersen_graph())
        for v in reversed(g.vertices):
            self.registry.register(str(v))
        colors = stage_edge_coloring(g, self.registry)
        self.assertTrue(is_proper_edge_coloring(g, colors))
        self.assertLessEqual(len(set(colors.values())), 4)


if __name__ == '__main__':
    unittest.main()
