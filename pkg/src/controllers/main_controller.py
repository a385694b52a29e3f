# src/controllers/main_controller.py
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from src.models.borel_code import check_ranked, format_address, negate
from src.models.fin_partition import MonotoneMap, parse_partition
from src.models.formula import Exists, eval_formula
from src.models.ordinal import parse_ordinal
from src.models.point import Point
from src.utils import file_formats
from src.utils.code_parser import format_code, parse_code_file, parse_family_file
from src.utils.constants import (COARSENING_BUDGET, DEFAULT_FUEL, DEFAULT_PRISONERS, EXIT_DOMAIN_ERROR,
                                 EXIT_OK, EXIT_PARSE_ERROR)
from src.utils.decoration import decorate, decorate_base
from src.utils.errors import ParseError, WorkbenchError
from src.utils.evaluator import evaluate, solve_strategy
from src.utils.formula_parser import parse_formula
from src.utils.graph_algorithms import (NoMatching, OddCycle, embed_into_regular, konig_color,
                                        leftmost_perfect_matching, partial_matching_degree_d, perfect_matching,
                                        two_color, vizing_color)
from src.utils.hierarchy import DEFINED_VAR, build_hierarchy, least_stage, stage_codes
from src.utils.ramsey import (adversary_coloring, coarsenings_2, finite_modification, sample_partitions,
                              stage_partitions)
from src.utils.stage_registry import StageRegistry
from src.utils.stagecraft import edge1_gadget, edge1_length, hat_strategy, wo_gadget

logger = logging.getLogger(__name__)

Report = Tuple[str, int]


@dataclass
class Command:
    subcommand: str
    arguments: Dict[str, Any] = field(default_factory=dict)

    def get(self, name, default=None):
        value = self.arguments.get(name)
        return default if value is None else value


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


class MainController:
    """Dispatches a parsed command to the library and renders a plain-text report."""

    def __init__(self):
        self.handlers = {
            "eval": self.handle_eval,
            "strategy": self.handle_strategy,
            "negate": self.handle_negate,
            "decorate": self.handle_decorate,
            "rank-check": self.handle_rank_check,
            "lalpha": self.handle_lalpha,
            "graphs": self.handle_graphs,
            "simulate": self.handle_simulate,
            "ramsey": self.handle_ramsey,
        }

    def run(self, cmd: Command) -> Report:
        handler = self.handlers.get(cmd.subcommand)
        if handler is None:
            return f"unknown command {cmd.subcommand!r}", EXIT_PARSE_ERROR
        try:
            report, code = handler(cmd)
        except ParseError as exc:
            logger.debug("parse error in %s", cmd.subcommand, exc_info=True)
            return f"parse error: {exc}", EXIT_PARSE_ERROR
        except WorkbenchError as exc:
            logger.debug("domain error in %s", cmd.subcommand, exc_info=True)
            return f"error: {exc}", EXIT_DOMAIN_ERROR
        except OSError as exc:
            return f"error: {exc}", EXIT_DOMAIN_ERROR
        return report.rstrip("\n"), code

    # --- codes ---

    def _code(self, cmd):
        return parse_code_file(_read(cmd.get("code")))

    def handle_eval(self, cmd: Command) -> Report:
        outcome = evaluate(self._code(cmd), Point.parse(cmd.get("point")), cmd.get("fuel", DEFAULT_FUEL))
        lines = [outcome.summary()]
        if cmd.get("witness"):
            lines.append(file_formats.write_witness(outcome.witness))
        return "\n".join(lines), EXIT_OK

    def handle_strategy(self, cmd: Command) -> Report:
        outcome = solve_strategy(self._code(cmd), Point.parse(cmd.get("point")), cmd.get("fuel", DEFAULT_FUEL))
        return "\n".join([outcome.summary(), file_formats.write_witness(outcome.witness)]), EXIT_OK

    def handle_negate(self, cmd: Command) -> Report:
        return format_code(negate(self._code(cmd))), EXIT_OK

    def handle_decorate(self, cmd: Command) -> Report:
        family = parse_family_file(_read(cmd.get("family")))
        if cmd.get("code") is None:
            return format_code(decorate_base(family.bound, family.positives, family.negatives)), EXIT_OK
        return format_code(decorate(self._code(cmd), family)), EXIT_OK

    def handle_rank_check(self, cmd: Command) -> Report:
        report = check_ranked(self._code(cmd), parse_ordinal(cmd.get("bound")))
        if report:
            return "OK", EXIT_OK
        return f"NOT RANKED at {format_address(report.address)}: {report.reason}", EXIT_DOMAIN_ERROR

    # --- constructible hierarchy ---

    def _formula(self, cmd: Command):
        if cmd.get("phi") is not None:
            return parse_formula(_read(cmd.get("phi")).strip())
        if cmd.get("formula") is not None:
            return parse_formula(cmd.get("formula"))
        return None

    @staticmethod
    def _bindings(cmd: Command, structure, where: str) -> Dict[str, int]:
        params = {}
        for binding in cmd.get("param", []):
            var, _, label = binding.partition("=")
            element = structure.find(label)
            if element is None:
                raise WorkbenchError(f"no element named {label!r} in {where}")
            params[var] = element
        return params

    def handle_lalpha(self, cmd: Command) -> Report:
        action = cmd.get("action")
        phi = self._formula(cmd)
        if action == "check":
            if cmd.get("structure") is None or phi is None:
                return "lalpha check needs --structure and --phi", EXIT_PARSE_ERROR
            s = file_formats.read_structure(_read(cmd.get("structure")))
            params = self._bindings(cmd, s, "the structure")
            lines = [f"{s.name(e)} {int(eval_formula(s, phi, {**params, DEFINED_VAR: e}))}" for e in s.domain]
            return "\n".join(lines), EXIT_OK

        if cmd.get("levels") is None:
            return f"lalpha {action} needs --levels", EXIT_PARSE_ERROR
        levels = build_hierarchy(cmd.get("levels"))
        if action == "build":
            lines = [f"level {i}: {level.size} elements" for i, level in enumerate(levels)]
            if cmd.get("show"):
                lines.append(file_formats.write_structure(levels[-1]))
            return "\n".join(lines), EXIT_OK

        if phi is None:
            return "lalpha code needs --phi or --formula", EXIT_PARSE_ERROR
        params = self._bindings(cmd, levels[-1], f"level {len(levels) - 1}")
        hats, layered = stage_codes(levels, phi, params)
        first = least_stage(levels, Exists(DEFINED_VAR, phi), params)
        lines = [f"least stage: {'none' if first is None else first}"]
        point = Point.parse(cmd.get("point")) if cmd.get("point") else None
        for i, (hat, exact) in enumerate(zip(hats, layered)):
            line = f"level {i}: {hat.arity} candidates"
            if point is not None:
                fuel = cmd.get("fuel", DEFAULT_FUEL)
                line += f", up to here {evaluate(hat, point, fuel).summary()}"
                line += f", first here {evaluate(exact, point, fuel).summary()}"
            lines.append(line)
        return "\n".join(lines), EXIT_OK

    # --- graphs ---

    def handle_graphs(self, cmd: Command) -> Report:
        g = file_formats.read_graph(_read(cmd.get("graph")))
        action = cmd.get("action")
        if action == "twocolor":
            result = two_color(g)
            if isinstance(result, OddCycle):
                return "odd cycle: " + " - ".join(map(str, result.cycle)), EXIT_DOMAIN_ERROR
            return "\n".join(f"{v} {result[v]}" for v in g.vertices), EXIT_OK
        if action == "match":
            if cmd.get("degree") is not None:
                return file_formats.write_matching(partial_matching_degree_d(g, cmd.get("degree"))), EXIT_OK
            if cmd.get("leftmost"):
                return file_formats.write_matching(leftmost_perfect_matching(g)), EXIT_OK
            matching = perfect_matching(g)
            if isinstance(matching, NoMatching):
                violator = ", ".join(map(str, sorted(matching.violator, key=str)))
                return f"no perfect matching; Hall violator: {violator}", EXIT_DOMAIN_ERROR
            return file_formats.write_matching(matching), EXIT_OK
        if action == "embed":
            return file_formats.write_graph(embed_into_regular(g, cmd.get("degree", g.max_degree))), EXIT_OK
        colors = vizing_color(g) if action == "vizing" else konig_color(g)
        used = len(set(colors.values()))
        return file_formats.write_edge_coloring(colors) + f"colors: {used}", EXIT_OK

    # --- simulations ---

    def handle_simulate(self, cmd: Command) -> Report:
        if cmd.get("action") == "hats":
            hats = Point.parse(f"{cmd.get('prefix', '')};{cmd.get('period')}")
            outcome = hat_strategy(hats, cmd.get("n", DEFAULT_PRISONERS))
            lines = [f"{i} hat {hats.bit(i)} guess {g}" for i, g in enumerate(outcome.guesses)]
            lines.append(f"errors: {outcome.errors}")
            return "\n".join(lines), EXIT_OK

        if cmd.get("kind") == "wo":
            colors = tuple(c.strip() for c in cmd.get("colors", "0,0").split(","))
            if len(colors) != 2 or not set(colors) <= {"0", "1"}:
                raise WorkbenchError("wo gadget colors must be two bits, e.g. 0,1")
            colors = tuple(int(c) for c in colors)
            gadget = wo_gadget(colors, ("u", "v"))
            lines = [file_formats.write_graph(gadget.fragment).rstrip("\n")]
        else:
            if cmd.get("colors") is None:
                return "the edge1 gadget needs --colors", EXIT_PARSE_ERROR
            k = cmd.get("k", 3)
            pairs = file_formats.read_color_pairs(cmd.get("colors", ""))
            gadget = edge1_gadget(k, pairs)
            lines = [f"N={edge1_length(k)}", f"category: {gadget.category[0]}-{gadget.category[1]}",
                     file_formats.write_graph(gadget.fragment).rstrip("\n")]
        lines.append("EXTENDABLE" if gadget.extendable else "NOT-EXTENDABLE")
        return "\n".join(lines), EXIT_OK

    # --- dual Ramsey ---

    def handle_ramsey(self, cmd: Command) -> Report:
        action = cmd.get("action")
        if action == "adversary":
            registry = StageRegistry()
            try:
                ps = stage_partitions(registry, sample_partitions(cmd.get("count", 10)), cmd.get("stages", 3))
                report = adversary_coloring(registry, ps)
            finally:
                registry.close()
            lines = []
            for choice in report.choices:
                colors = [report.coloring.color(q) for _, q in (choice.first, choice.second)]
                lines.append(f"{choice.partition_id} ({choice.stage},{choice.index}) f={choice.f} "
                             f"n={choice.first[0]}:{colors[0]} n={choice.second[0]}:{colors[1]}")
            lines.append(f"monochromatic: {len(report.monochromatic)}")
            return "\n".join(lines), EXIT_OK

        if cmd.get("partition") is None:
            return f"ramsey {action} needs --partition", EXIT_PARSE_ERROR
        p = parse_partition(cmd.get("partition"))
        if action == "modify":
            f = MonotoneMap.linear(cmd.get("slope", 2), cmd.get("offset", 0))
            return str(finite_modification(p, f, cmd.get("n", 0))), EXIT_OK
        found = coarsenings_2(p, cmd.get("budget", COARSENING_BUDGET))
        return "\n".join(f"{description} {q}" for description, q in found), EXIT_OK
