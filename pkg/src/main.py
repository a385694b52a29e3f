import argparse
import logging
import sys

from src.controllers.main_controller import Command, MainController
from src.utils.constants import DEFAULT_FUEL, DEFAULT_LOG_LEVEL, DEFAULT_PRISONERS, LOG_FORMAT


def build_parser():
    parser = argparse.ArgumentParser(prog="borel-workbench",
                                     description="Ranked Borel codes over Cantor space and their stage constructions.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debugging detail to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    def code_command(name, help_text, point=True):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--code", required=True, help="code file")
        if point:
            sub.add_argument("--point", required=True, help="eventually periodic point, prefix;period")
            sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        return sub

    code_command("eval", "decide membership of a point").add_argument("--witness", action="store_true")
    code_command("strategy", "find a winning strategy for the membership game")
    code_command("negate", "print the dual code", point=False)
    rank = code_command("rank-check", "check a rank annotation against a bound", point=False)
    rank.add_argument("--bound", required=True)

    decorate = commands.add_parser("decorate", help="insert family members under a ranked code")
    decorate.add_argument("--code", help="code file; omitted to decorate the base tree")
    decorate.add_argument("--family", required=True, help="family file")

    lalpha = commands.add_parser("lalpha", help="finite levels of the constructible hierarchy")
    lalpha.add_argument("action", choices=["build", "code", "check"])
    lalpha.add_argument("--levels", type=int, help="number of levels to build (build, code)")
    lalpha.add_argument("--show", action="store_true", help="print the top level")
    source = lalpha.add_mutually_exclusive_group()
    source.add_argument("--phi", help="file holding a formula in x")
    source.add_argument("--formula", help="formula in x given inline, e.g. 'exists y. in(y,x)'")
    lalpha.add_argument("--structure", help="structure file to check the formula in (check)")
    lalpha.add_argument("--param", action="append", help="z1=label binding")
    lalpha.add_argument("--point")
    lalpha.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    graphs = commands.add_parser("graphs", help="colorings and matchings of a graph file")
    graphs.add_argument("action", choices=["match", "vizing", "konig", "twocolor", "embed"])
    graphs.add_argument("--graph", required=True)
    graphs.add_argument("--degree", type=int)
    graphs.add_argument("--leftmost", action="store_true")

    simulate = commands.add_parser("simulate", help="hat game and gadget adversaries")
    simulate.add_argument("action", choices=["hats", "gadget"])
    simulate.add_argument("--prefix", default="")
    simulate.add_argument("--period", default="0")
    simulate.add_argument("--n", type=int, default=DEFAULT_PRISONERS)
    simulate.add_argument("--kind", choices=["wo", "edge1"], default="wo")
    simulate.add_argument("--k", type=int, default=3)
    simulate.add_argument("--colors")

    ramsey = commands.add_parser("ramsey", help="two-block coarsenings and the coloring adversary")
    ramsey.add_argument("action", choices=["adversary", "modify", "coarsenings"])
    ramsey.add_argument("--stages", type=int, default=3)
    ramsey.add_argument("--count", type=int, default=10)
    ramsey.add_argument("--partition")
    ramsey.add_argument("--slope", type=int, default=2)
    ramsey.add_argument("--offset", type=int, default=0)
    ramsey.add_argument("--n", type=int, default=0)
    ramsey.add_argument("--budget", type=int)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(format=LOG_FORMAT, level=logging.DEBUG if args.verbose else DEFAULT_LOG_LEVEL,
                        stream=sys.stderr)
    arguments = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    report, code = MainController().run(Command(args.command, arguments))
    if report:
        print(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
