# tests/test_graphs.py
import unittest

import networkx as nx
from hypothesis import given, settings

from src.models.fin_graph import FinGraph
from src.utils.graph_algorithms import (DegreeTooHigh, EmptyCandidates, NoMatching, NotBipartite, OddCycle,
                                        embed_into_regular, is_induced_subgraph, is_matching,
                                        is_proper_edge_coloring, is_proper_two_coloring, konig_color, leftmost,
                                        leftmost_perfect_matching, partial_matching_degree_d, perfect_matching,
                                        two_color, vizing_color)
from tests.oracles import bipartite_graphs, edge_colorable, hall_neighbors, two_colorings


def cycle(n):
    return FinGraph.from_networkx(nx.cycle_graph(n))


SQUARE = FinGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
PATH = FinGraph("abc", [("a", "b"), ("b", "c")])


class TestTwoColoring(unittest.TestCase):
    def test_even_cycle(self):
        coloring = two_color(cycle(6))
        self.assertTrue(is_proper_two_coloring(cycle(6), coloring))
        self.assertEqual(coloring[0], 0)

    def test_odd_cycle_is_reported(self):
        result = two_color(cycle(3))
        self.assertIsInstance(result, OddCycle)
        self.assertEqual(result.cycle, (1, 0, 2))

    def test_odd_cycle_in_a_larger_graph(self):
        g = FinGraph(range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)])
        result = two_color(g)
        self.assertIsInstance(result, OddCycle)
        self.assertEqual(len(result.cycle) % 2, 1)
        ring = result.cycle + result.cycle[:1]
        self.assertTrue(all(g.has_edge(u, v) for u, v in zip(ring, ring[1:])))

    def test_roots_choose_the_zero_side(self):
        self.assertEqual(two_color(PATH, roots=["b"])["b"], 0)

    @given(bipartite_graphs())
    @settings(deadline=None)
    def test_colors_every_bipartite_graph(self, g):
        coloring = two_color(g)
        self.assertTrue(is_proper_two_coloring(g, coloring))
        self.assertIn(coloring, list(two_colorings(g)))


class TestMatchings(unittest.TestCase):
    def test_square(self):
        matching = perfect_matching(SQUARE)
        self.assertEqual(len(matching), 2)
        self.assertTrue(is_matching(matching))

    def test_complete_bipartite(self):
        g = FinGraph.from_networkx(nx.complete_bipartite_graph(3, 3))
        self.assertEqual(len(perfect_matching(g)), 3)

    def test_hall_violator(self):
        result = perfect_matching(PATH)
        self.assertIsInstance(result, NoMatching)
        self.assertEqual(result.violator, frozenset({"a", "c"}))

    def test_odd_cycles_are_not_bipartite(self):
        with self.assertRaises(NotBipartite):
            perfect_matching(cycle(5))

    @given(bipartite_graphs())
    @settings(deadline=None)
    def test_matching_or_violator(self, g):
        result = perfect_matching(g)
        if isinstance(result, NoMatching):
            self.assertLess(len(hall_neighbors(g, result.violator)), len(result.violator))
        else:
            self.assertTrue(is_matching(result))
            self.assertEqual(2 * len(result), len(g))
            self.assertTrue(all(g.has_edge(u, v) for u, v in result))

    def test_leftmost_perfect_matching(self):
        self.assertEqual(leftmost_perfect_matching(SQUARE), frozenset({("a", "d"), ("b", "c")}))
        with self.assertRaises(EmptyCandidates):
            leftmost_perfect_matching(PATH)

    def test_leftmost_refuses_colliding_encodings(self):
        with self.assertRaises(ValueError):
            leftmost(["x", "y"], key=lambda _: "0")
        with self.assertRaises(EmptyCandidates):
            leftmost([], key=str)


class TestEmbedding(unittest.TestCase):
    @given(bipartite_graphs(max_degree=2))
    @settings(max_examples=50, deadline=None)
    def test_regular_superset(self, g):
        for d in (2, 3, 4):
            big = embed_into_regular(g, d)
            self.assertTrue(big.is_regular(d))
            self.assertTrue(is_induced_subgraph(g, big))
            self.assertNotIsInstance(two_color(big), OddCycle)

    def test_degree_too_high(self):
        star = FinGraph("abcd", [("a", "b"), ("a", "c"), ("a", "d")])
        with self.assertRaises(DegreeTooHigh):
            embed_into_regular(star, 2)

    def test_regular_input_is_returned(self):
        self.assertIs(embed_into_regular(SQUARE, 2), SQUARE)

    @given(bipartite_graphs())
    @settings(deadline=None)
    def test_partial_matching_covers_full_degree(self, g):
        matching = partial_matching_degree_d(g, 3)
        self.assertTrue(is_matching(matching))
        self.assertTrue(all(g.has_edge(u, v) for u, v in matching))
        covered = {v for e in matching for v in e}
        for v in g.vertices:
            if g.degree(v) == 3:
                self.assertIn(v, covered)


class TestEdgeColoring(unittest.TestCase):
    def test_petersen(self):
        g = FinGraph.from_networkx(nx.petersen_graph())
        colors = vizing_color(g)
        self.assertTrue(is_proper_edge_coloring(g, colors))
        self.assertEqual(len(set(colors.values())), 4)
        self.assertFalse(edge_colorable(g, 3))

    def test_random_graphs(self):
        for seed in range(10):
            g = FinGraph.from_networkx(nx.gnp_random_graph(12, 0.4, seed=seed))
            colors = vizing_color(g)
            self.assertTrue(is_proper_edge_coloring(g, colors))
            self.assertLessEqual(max(colors.values(), default=0), g.max_degree)

    def test_order_is_respected(self):
        g = cycle(5)
        colors = vizing_color(g, order=lambda e: (-e[0], -e[1]))
        self.assertTrue(is_proper_edge_coloring(g, colors))

    @given(bipartite_graphs())
    @settings(deadline=None)
    def test_konig(self, g):
        colors = konig_color(g)
        self.assertTrue(is_proper_edge_coloring(g, colors))
        self.assertLessEqual(len(set(colors.values())), g.max_degree)

    def test_self_loops_are_refused(self):
        with self.assertRaises(ValueError):
            FinGraph("a", [("a", "a")])


if __name__ == '__main__':
    unittest.main()
