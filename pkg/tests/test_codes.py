# tests/test_codes.py
import unittest

from src.models.borel_code import (BadAddress, CodeGraph, GraphNode, Kind, LeafHasNoChildren, NoSuchChild,
                                   UnboundRef, Unbounded, check_ranked, format_address, intersection,
                                   is_expandable, is_fully_ranked, iter_nodes, lazy, leaf, negate, node_at,
                                   structurally_equal, union, with_height_ranks)
from src.models.clopen import ClopenCode
from src.models.ordinal import OMEGA, ONE, ZERO, Ordinal, parse_ordinal
from src.models.point import Point, PointSyntaxError
from tests.oracles import small_codes, small_points


class TestPoint(unittest.TestCase):
    def test_canonical_form(self):
        self.assertEqual(Point("0101", "01"), Point("", "01"))
        self.assertEqual(Point("", "0101"), Point("", "01"))
        self.assertEqual(Point("1", "11"), Point.constant(1))
        self.assertEqual(str(Point.parse("010;1")), "010;1")

    def test_bits_and_shift(self):
        x = Point.parse("010;1")
        self.assertEqual(x.bits(6), "010111")
        self.assertEqual(x.shift(2), Point.parse("0;1"))
        self.assertEqual(x.shift(10), Point.constant(1))
        self.assertEqual(Point.parse(";01").shift(3), Point.parse(";10"))

    def test_parse_errors(self):
        for text in ["01", "0;", "2;1", "0a;1"]:
            with self.assertRaises(PointSyntaxError):
                Point.parse(text)


class TestClopen(unittest.TestCase):
    def test_antichain_normalization(self):
        self.assertEqual(ClopenCode.of("01", "0"), ClopenCode.of("0"))
        self.assertEqual(str(ClopenCode.of("1", "00")), "{[1], [00]}")
        self.assertTrue(ClopenCode.of("", "0").is_full)

    def test_complement(self):
        self.assertEqual(ClopenCode.of("0").complement(), ClopenCode.of("1"))
        self.assertTrue(ClopenCode.full().complement().is_empty)
        self.assertTrue(ClopenCode.empty().complement().is_full)
        c = ClopenCode.of("01", "110")
        for x in small_points(4):
            self.assertNotEqual(c.contains(x), c.complement().contains(x))

    def test_same_set_ignores_presentation(self):
        self.assertTrue(ClopenCode.of("00", "01").same_set(ClopenCode.of("0")))
        self.assertFalse(ClopenCode.of("00").same_set(ClopenCode.of("0")))

    def test_bit_equals(self):
        c = ClopenCode.bit_equals(2, 1)
        self.assertEqual(c.cylinders, frozenset({"**1"}))
        self.assertTrue(c.contains(Point.parse("001;0")))
        self.assertFalse(c.contains(Point.parse(";0")))
        spelled_out = ClopenCode.of("001", "011", "101", "111")
        self.assertTrue(c.same_set(spelled_out))
        self.assertEqual(c.complement(), ClopenCode.bit_equals(2, 0).complement().complement())
        with self.assertRaises(ValueError):
            ClopenCode.bit_equals(1, 2)

    def test_bit_equals_stays_small_far_out(self):
        c = ClopenCode.bit_equals(60, 0)
        self.assertEqual(len(c.cylinders), 1)
        self.assertTrue(c.contains(Point.parse(";0")))
        self.assertFalse(c.contains(Point.parse(";1")))

    def test_patterns(self):
        self.assertEqual(ClopenCode.of("*0", "10"), ClopenCode.of("*0"))
        self.assertEqual(ClopenCode.of("*", "1"), ClopenCode.of("*"))
        self.assertEqual(str(ClopenCode.of("1*1")), "{[1*1]}")
        c = ClopenCode.of("*1", "0*0")
        for x in small_points(4):
            self.assertNotEqual(c.contains(x), c.complement().contains(x))
        self.assertTrue(ClopenCode.of("*1", "00").same_set(ClopenCode.of("01", "11", "00")))
        with self.assertRaises(ValueError):
            ClopenCode.of("0?")


class TestBorelCode(unittest.TestCase):
    def setUp(self):
        self.t = union(leaf(ClopenCode.of("0")), intersection(leaf(ClopenCode.of("1")), leaf(ClopenCode.full())))

    def test_children(self):
        self.assertEqual(self.t.arity, 2)
        self.assertIs(node_at(self.t, (1, 0)).kind, Kind.LEAF)
        with self.assertRaises(LeafHasNoChildren):
            self.t.child(0).child(0)
        with self.assertRaises(NoSuchChild):
            self.t.child(2)
        with self.assertRaises(BadAddress):
            node_at(self.t, (0, 0))

    def test_iter_nodes_in_address_order(self):
        self.assertEqual([a for a, _ in iter_nodes(self.t)], [(), (0,), (1,), (1, 0), (1, 1)])
        self.assertEqual(format_address((1, 0)), "<1,0>")
        self.assertEqual(format_address(()), "<>")

    def test_lazy_children_are_forced_once(self):
        t = lazy(Kind.INTERSECTION, lambda n: leaf(ClopenCode.of("0" * (n + 1))))
        self.assertIsNone(t.arity)
        first = t.child(3)
        self.assertIs(t.child(3), first)
        self.assertEqual(t.children.generated, 1)
        self.assertFalse(is_expandable(t))
        with self.assertRaises(Unbounded):
            list(iter_nodes(t))

    def test_check_ranked(self):
        ranked = union(leaf(ClopenCode.of("0"), rank=ZERO), leaf(ClopenCode.of("1"), rank=ZERO), rank=ONE)
        self.assertTrue(check_ranked(ranked, OMEGA))
        flat = union(leaf(ClopenCode.of("0"), rank=ONE), rank=ONE)
        report = check_ranked(flat, OMEGA)
        self.assertFalse(report)
        self.assertEqual(report.address, (0,))
        too_high = ranked.with_rank(OMEGA + 1)
        self.assertEqual(check_ranked(too_high, OMEGA).address, ())

    def test_check_ranked_is_monotone_in_the_bound(self):
        bounds = [ZERO, ONE, Ordinal.natural(2), Ordinal.natural(3), OMEGA, OMEGA + 1, Ordinal.omega_power(Ordinal.natural(2))]
        codes = [with_height_ranks(t) for t in small_codes(1)]
        codes += [t.with_rank(r) for t in codes[::5] for r in bounds[:4]]
        for t in codes:
            verdicts = [bool(check_ranked(t, bound)) for bound in bounds]
            self.assertEqual(verdicts, sorted(verdicts), msg=f"{verdicts} at rank {t.rank}")

    def test_with_height_ranks(self):
        ranked = with_height_ranks(union(union(leaf(ClopenCode.full())), leaf(ClopenCode.empty())))
        self.assertEqual(ranked.rank, Ordinal.natural(2))
        self.assertTrue(is_fully_ranked(ranked))
        self.assertTrue(check_ranked(ranked, Ordinal.natural(2)))
        self.assertFalse(check_ranked(ranked, ONE))

    def test_negation_is_an_involution(self):
        for t in small_codes(2):
            self.assertTrue(structurally_equal(negate(negate(t)), t))
            self.assertIs(negate(t).kind, t.kind.dual())

    def test_negation_keeps_ranks(self):
        t = union(leaf(ClopenCode.of("0"), rank=ZERO), rank=parse_ordinal("w + 2"))
        self.assertEqual(negate(t).rank, t.rank)
        self.assertEqual(negate(t).child(0).clopen, ClopenCode.of("1"))

    def test_negating_lazy_codes(self):
        t = lazy(Kind.UNION, lambda n: leaf(ClopenCode.of("1" * (n + 1))))
        dual = negate(t)
        self.assertIs(dual.kind, Kind.INTERSECTION)
        self.assertIsNone(dual.arity)
        self.assertTrue(dual.child(2).clopen.same_set(ClopenCode.of("111").complement()))


class TestCodeGraph(unittest.TestCase):
    def setUp(self):
        self.graph = CodeGraph({
            "u": GraphNode(Kind.UNION, None, ("e", "u")),
            "e": GraphNode(Kind.LEAF, ClopenCode.empty()),
        })

    def test_cycles(self):
        self.assertTrue(self.graph.has_cycle("u"))
        self.assertFalse(self.graph.has_cycle("e"))
        self.assertEqual(self.graph.reachable("u"), ["u", "e"])
        code = self.graph.code("u")
        self.assertIs(code.child(1), code)
        self.assertFalse(is_expandable(code))

    def test_negated_graph(self):
        dual = self.graph.negated()
        self.assertIs(dual.negated(), self.graph)
        self.assertIs(dual.node("u").kind, Kind.INTERSECTION)
        self.assertTrue(dual.node("e").clopen.is_full)
        self.assertIs(negate(self.graph.code("u")).children.graph, dual)

    def test_unbound_reference(self):
        with self.assertRaises(UnboundRef):
            CodeGraph({"u": GraphNode(Kind.UNION, None, ("missing",))})

    def test_from_code(self):
        t = union(leaf(ClopenCode.of("0")), intersection(leaf(ClopenCode.of("1"))))
        graph = CodeGraph.from_code(t)
        self.assertEqual(sorted(graph.names), ["@", "@0", "@1", "@1.0"])
        self.assertTrue(structurally_equal(graph.code("@"), t))


if __name__ == '__main__':
    unittest.main()
