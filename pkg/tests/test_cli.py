# tests/test_cli.py
import io
import os
import tempfile
import unittest
from contextlib import redirect_stdout

from src.controllers.main_controller import Command, MainController
from src.main import main
from src.models.borel_code import UnboundRef
from src.utils.code_parser import CodeSyntaxError, format_code, parse_code_file, parse_family_file
from src.utils.constants import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_PARSE_ERROR
from src.utils.file_formats import FormatError, read_color_pairs, read_graph, read_structure, write_structure

RANKED = "(union :rank w+1 (leaf :rank 0 {[0]}) (leaf :rank 0 {[1]}))"
SELF_UNION = "(def u (union (leaf empty) (ref u)))\n(ref u)"


class TestCodeFiles(unittest.TestCase):
    def test_ranked_code_round_trips(self):
        self.assertEqual(format_code(parse_code_file(RANKED)), RANKED)

    def test_bindings_round_trip(self):
        self.assertEqual(format_code(parse_code_file(SELF_UNION)), SELF_UNION)

    def test_comments_and_layout(self):
        t = parse_code_file("; everything\n(inter\n  (leaf full) ; kept\n  (leaf {[01], [1]}))\n")
        self.assertEqual(format_code(t), "(inter (leaf full) (leaf {[1], [01]}))")

    def test_bit_patterns_round_trip(self):
        text = "(inter (leaf {[**0]}) (leaf {[1], [0*1]}))"
        t = parse_code_file(text)
        self.assertEqual(format_code(t), text)
        self.assertEqual(t.child(0).clopen.cylinders, frozenset({"**0"}))

    def test_rank_anywhere_in_the_node(self):
        t = parse_code_file("(union (leaf {[0]} :rank 0) :rank 2)")
        self.assertEqual(format_code(t), "(union :rank 2 (leaf :rank 0 {[0]}))")

    def test_errors_carry_positions(self):
        with self.assertRaises(CodeSyntaxError) as ctx:
            parse_code_file("(union\n  (leaf {[0]})\n  (leaf {[2]}))")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 9))
        for text in ["(union (leaf full)", "(leaf full) (leaf empty)", "(leaf :rank w^ full)",
                     "(spiral (leaf full))", "(leaf full))", "(union (leaf full) (def x (leaf full)))"]:
            with self.subTest(text=text):
                with self.assertRaises(CodeSyntaxError):
                    parse_code_file(text)

    def test_unbound_reference(self):
        with self.assertRaises(UnboundRef):
            parse_code_file("(union (ref nowhere))")
        with self.assertRaises(UnboundRef):
            parse_code_file("(def a (ref b)) (ref a)")

    def test_family_file(self):
        family = parse_family_file("(positive (leaf :rank 0 {[0]}))\n(negative (leaf :rank 1 {[1]}))\n(bound 2)")
        self.assertEqual(len(family.positives), 1)
        self.assertEqual(len(family.negatives), 1)
        self.assertEqual(str(family.bound), "2")
        with self.assertRaises(CodeSyntaxError):
            parse_family_file("(positive (leaf :rank 0 full))")


class TestFileFormats(unittest.TestCase):
    def test_graph(self):
        g = read_graph("# a path\nv a 0\nv b 1\nv c 0\ne a b\ne b c\n")
        self.assertEqual(g.sides, {"a": 0, "b": 1, "c": 0})
        self.assertEqual(read_graph("e 1 2\n").vertices, [1, 2])
        with self.assertRaises(FormatError):
            read_graph("v a 2\n")
        with self.assertRaises(FormatError):
            read_graph("v a 0\nv b 0\ne a b\n")
        with self.assertRaises(FormatError):
            read_graph("edge a b\n")

    def test_structure(self):
        text = "elem 0\nelem {0}\nin 0 {0}\n"
        s = read_structure(text)
        self.assertEqual(s.size, 2)
        self.assertEqual(write_structure(s), text)
        with self.assertRaises(FormatError):
            read_structure("elem a\nin a b\n")

    def test_color_pairs(self):
        self.assertEqual(read_color_pairs("0-1, 2-3"), [(0, 1), (2, 3)])
        with self.assertRaises(FormatError):
            read_color_pairs("0-1,2")


class TestController(unittest.TestCase):
    def setUp(self):
        self.controller = MainController()
        self.workdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.workdir.cleanup()

    def write(self, name, text):
        path = os.path.join(self.workdir.name, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def run_command(self, subcommand, **arguments):
        return self.controller.run(Command(subcommand, arguments))

    def test_eval_with_witness(self):
        path = self.write("ranked.code", RANKED)
        report, code = self.run_command("eval", code=path, point="1;0", witness=True)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.splitlines(), ["IN", "<> 1", "<0> 0", "<1> 1"])

    def test_eval_cyclic_code(self):
        path = self.write("loop.code", SELF_UNION)
        self.assertEqual(self.run_command("eval", code=path, point=";0"), ("UNKNOWN undetermined-cycle", EXIT_OK))

    def test_strategy_and_negate(self):
        path = self.write("ranked.code", RANKED)
        report, _ = self.run_command("strategy", code=path, point="0;1")
        self.assertEqual(report.splitlines(), ["IN", "<> 1", "<0> 1"])
        report, _ = self.run_command("negate", code=path)
        self.assertEqual(report, "(inter :rank w+1 (leaf :rank 0 {[1]}) (leaf :rank 0 {[0]}))")

    def test_rank_check(self):
        path = self.write("flat.code", "(union :rank 1 (leaf :rank 1 full))")
        report, code = self.run_command("rank-check", code=path, bound="1")
        self.assertEqual(code, EXIT_DOMAIN_ERROR)
        self.assertTrue(report.startswith("NOT RANKED at <0>"))
        path = self.write("ranked.code", RANKED)
        self.assertEqual(self.run_command("rank-check", code=path, bound="w+1"), ("OK", EXIT_OK))

    def test_decorate_base_tree(self):
        path = self.write("family.txt", "(positive (leaf :rank 0 {[0]}))\n(bound 1)")
        report, code = self.run_command("decorate", family=path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report, "(union :rank 2 (leaf :rank 0 empty) (inter :rank 1 (leaf :rank 0 {[0]})))")

    def test_parse_errors_exit_two(self):
        path = self.write("ranked.code", RANKED)
        report, code = self.run_command("eval", code=path, point="01")
        self.assertEqual(code, EXIT_PARSE_ERROR)
        self.assertTrue(report.startswith("parse error: 1:1:"))
        self.assertEqual(self.run_command("spiral")[1], EXIT_PARSE_ERROR)
        self.assertEqual(self.run_command("lalpha", action="code", levels=2)[1], EXIT_PARSE_ERROR)

    def test_missing_file(self):
        report, code = self.run_command("eval", code=os.path.join(self.workdir.name, "absent"), point=";0")
        self.assertEqual(code, EXIT_DOMAIN_ERROR)
        self.assertTrue(report.startswith("error:"))

    def test_lalpha(self):
        report, _ = self.run_command("lalpha", action="build", levels=3)
        self.assertEqual(report.splitlines()[-1], "level 3: 4 elements")
        report, code = self.run_command("lalpha", action="code", levels=3, formula="exists y. in(y,x)", point="1;0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.splitlines(), [
            "least stage: 2",
            "level 0: 0 candidates, up to here OUT, first here OUT",
            "level 1: 1 candidates, up to here OUT, first here OUT",
            "level 2: 2 candidates, up to here IN, first here IN",
            "level 3: 4 candidates, up to here IN, first here OUT",
        ])

    def test_lalpha_reads_the_formula_from_a_file(self):
        phi = self.write("nonempty.phi", "exists y. in(y,x)\n")
        report, code = self.run_command("lalpha", action="code", levels=3, phi=phi, point="1;0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report.splitlines()[0], "least stage: 2")
        self.assertEqual(report.splitlines()[-1], "level 3: 4 candidates, up to here IN, first here OUT")
        self.assertEqual(self.run_command("lalpha", action="code", phi=phi)[1], EXIT_PARSE_ERROR)

    def test_lalpha_check_on_a_structure_file(self):
        structure = self.write("two.structure", "elem empty\nelem one\nin empty one\n")
        empty = self.write("empty.phi", "forall y. !in(y,x)")
        self.assertEqual(self.run_command("lalpha", action="check", structure=structure, phi=empty),
                         ("empty 1\none 0", EXIT_OK))
        member = self.write("member.phi", "in(z1,x)")
        self.assertEqual(self.run_command("lalpha", action="check", structure=structure, phi=member,
                                          param=["z1=empty"]),
                         ("empty 0\none 1", EXIT_OK))
        self.assertEqual(self.run_command("lalpha", action="check", structure=structure, phi=member)[1],
                         EXIT_DOMAIN_ERROR)
        self.assertEqual(self.run_command("lalpha", action="check", phi=empty)[1], EXIT_PARSE_ERROR)
        broken = self.write("broken.structure", "elem a\nin a b\n")
        self.assertEqual(self.run_command("lalpha", action="check", structure=broken, phi=empty)[1],
                         EXIT_PARSE_ERROR)

    def test_graphs(self):
        triangle = self.write("triangle.graph", "e 0 1\ne 1 2\ne 2 0\n")
        self.assertEqual(self.run_command("graphs", action="twocolor", graph=triangle),
                         ("odd cycle: 1 - 0 - 2", EXIT_DOMAIN_ERROR))
        path = self.write("path.graph", "e a b\ne b c\n")
        report, code = self.run_command("graphs", action="match", graph=path)
        self.assertEqual((report, code), ("no perfect matching; Hall violator: a, c", EXIT_DOMAIN_ERROR))
        square = self.write("square.graph", "e a b\ne b c\ne c d\ne d a\n")
        self.assertEqual(self.run_command("graphs", action="match", graph=square, leftmost=True),
                         ("a d\nb c", EXIT_OK))
        report, _ = self.run_command("graphs", action="konig", graph=square)
        self.assertEqual(report.splitlines()[-1], "colors: 2")

    def test_hats(self):
        report, code = self.run_command("simulate", action="hats", prefix="010", period="1", n=20)
        lines = report.splitlines()
        self.assertEqual(lines[0], "0 hat 0 guess 1")
        self.assertEqual(lines[-1], "errors: 1")
        self.assertEqual(len(lines), 21)

    def test_gadgets(self):
        report, code = self.run_command("simulate", action="gadget", kind="edge1", k=3,
                                        colors=",".join(["0-1"] * 13))
        lines = report.splitlines()
        self.assertEqual(lines[:2], ["N=13", "category: 0-1"])
        self.assertEqual(lines[-1], "NOT-EXTENDABLE")
        report, _ = self.run_command("simulate", action="gadget", kind="wo", colors="0,1")
        self.assertEqual(report.splitlines(), ["v fresh0", "v u", "v v", "e fresh0 u", "e fresh0 v",
                                               "NOT-EXTENDABLE"])
        self.assertEqual(self.run_command("simulate", action="gadget", kind="wo", colors="0,2")[1],
                         EXIT_DOMAIN_ERROR)
        self.assertEqual(self.run_command("simulate", action="gadget", kind="edge1")[1], EXIT_PARSE_ERROR)

    def test_ramsey(self):
        report, code = self.run_command("ramsey", action="adversary", count=10, stages=3)
        lines = report.splitlines()
        self.assertEqual(lines[0], "p0 (0,0) f=2i+0 n=0:0 n=1:1")
        self.assertEqual(lines[-1], "monochromatic: 0")
        self.assertEqual(self.run_command("ramsey", action="adversary", count=10, stages=3), (report, code))
        report, _ = self.run_command("ramsey", action="modify", partition="table: ; rule: fresh(0,1)")
        self.assertEqual(report, "table: ; rule: periodic(0,2)")
        report, _ = self.run_command("ramsey", action="coarsenings", partition="table: ; rule: periodic(0,3)")
        self.assertEqual(len(report.splitlines()), 3)


class TestMain(unittest.TestCase):
    def test_main_prints_the_report(self):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(["simulate", "hats", "--prefix", "010", "--period", "1"])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.getvalue().endswith("errors: 1\n"))

    def test_main_returns_the_exit_code(self):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(["ramsey", "modify", "--partition", "table: ; rule: tail(0)"])
        self.assertEqual(code, EXIT_DOMAIN_ERROR)
        self.assertIn("error:", out.getvalue())

    def test_main_reads_formula_files(self):
        with tempfile.TemporaryDirectory() as workdir:
            path = os.path.join(workdir, "nonempty.phi")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("exists y. in(y,x)\n")
            out = io.StringIO()
            with redirect_stdout(out):
                code = main(["lalpha", "code", "--levels", "2", "--phi", path])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.getvalue().splitlines()[0], "least stage: 2")


if __name__ == '__main__':
    unittest.main()
