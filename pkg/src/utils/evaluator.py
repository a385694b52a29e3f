# src/utils/evaluator.py
"""Membership semantics for Borel codes.

Values are 0, 1 or an :class:`UnknownReason`; unions and intersections
combine them with three-valued (Kleene) logic. Finite children are always
evaluated in full, infinite generators are forced up to ``fuel`` children per
node, and cyclic graph presentations are settled by least/greatest fixpoints.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Tuple

from src.models.borel_code import BadAddress, BorelCode, CodeGraph, Kind, iter_nodes, node_at
from src.models.eval_outcome import EvalOutcome, UnknownReason, Verdict, Witness
from src.models.point import Point
from src.utils.constants import DEFAULT_FUEL

logger = logging.getLogger(__name__)


@dataclass
class FixpointLabels:
    least: Dict[str, int] = field(default_factory=dict)
    greatest: Dict[str, int] = field(default_factory=dict)
    # round in which a node first reached its least value 1 / greatest value 0
    least_stage: Dict[str, int] = field(default_factory=dict)
    greatest_stage: Dict[str, int] = field(default_factory=dict)

    def determined(self, name: str) -> bool:
        return self.least[name] == self.greatest[name]


def _step(graph: CodeGraph, values: Dict[str, int], name: str, x: Point) -> int:
    node = graph.node(name)
    if node.kind is Kind.LEAF:
        return int(node.clopen.contains(x))
    kids = [values[c] for c in node.children]
    if node.kind is Kind.UNION:
        return max(kids, default=0)
    return min(kids, default=1)


def _iterate(graph: CodeGraph, x: Point, start: int):
    names = graph.names
    values = {}
    stages = {}
    for name in names:
        node = graph.node(name)
        if node.kind is Kind.LEAF:
            values[name] = int(node.clopen.contains(x))
            if values[name] != start:
                stages[name] = 0
        else:
            values[name] = start
    rounds = 0
    while True:
        rounds += 1
        updated = {name: _step(graph, values, name, x) for name in names}
        changed = [name for name in names if updated[name] != values[name]]
        if not changed:
            break
        for name in changed:
            stages[name] = rounds
        values = updated
    logger.debug("fixpoint from %d settled after %d rounds", start, rounds)
    return values, stages


def graph_fixpoints(graph: CodeGraph, x: Point) -> FixpointLabels:
    least, least_stage = _iterate(graph, x, 0)
    greatest, greatest_stage = _iterate(graph, x, 1)
    return FixpointLabels(least, greatest, least_stage, greatest_stage)


def fixpoint_labelings(t: BorelCode, x: Point) -> Tuple[Dict[str, int], Dict[str, int]]:
    """Least and greatest fixpoint labelings of the graph presenting ``t``.

    Trees are first presented as graphs with nodes named by address.
    """
    if t.is_graph_node:
        graph, root = t.children.graph, t.children.name
    else:
        graph, root = CodeGraph.from_code(t), "@"
    labels = graph_fixpoints(graph, x)
    names = graph.reachable(root)
    return ({n: labels.least[n] for n in names}, {n: labels.greatest[n] for n in names})


def _combine(kind: Kind, values):
    deciding = 1 if kind is Kind.UNION else 0
    if deciding in values:
        return deciding
    for value in values:
        if isinstance(value, UnknownReason):
            return value
    return 1 - deciding


class _Walker:
    def __init__(self, x: Point, fuel: int, short_circuit: bool):
        self.x = x
        self.fuel = fuel
        self.short_circuit = short_circuit
        self.witness: Witness = {}
        self.complete = True
        self._labels: Dict[int, FixpointLabels] = {}
        self._cyclic: Dict[Tuple[int, str], bool] = {}

    def value(self, node: BorelCode, address):
        if node.is_leaf:
            v = int(node.clopen.contains(self.x))
            self.witness[address] = v
            return v
        if node.is_graph_node and self._on_cycle(node):
            return self._graph_value(node, address)
        if node.arity is None:
            return self._forced(node, address)
        return self._finite(node, address)

    def _on_cycle(self, node):
        ref = node.children
        key = (id(ref.graph), ref.name)
        if key not in self._cyclic:
            self._cyclic[key] = ref.graph.has_cycle(ref.name)
        return self._cyclic[key]

    def _child(self, node, address, i):
        # evaluate a child into its own labeling so callers choose what to keep
        saved, self.witness = self.witness, {}
        try:
            v = self.value(node.child(i), address + (i,))
            return v, self.witness
        finally:
            self.witness = saved

    def _finite(self, node, address):
        deciding = 1 if node.kind is Kind.UNION else 0
        results = []
        for i in range(node.arity):
            v, labels = self._child(node, address, i)
            results.append((v, labels))
            if self.short_circuit and v == deciding:
                if len(results) < node.arity:
                    self.complete = False
                self.witness.update(labels)
                self.witness[address] = v
                return v
        values = [v for v, _ in results]
        v = _combine(node.kind, values)
        if any(isinstance(value, UnknownReason) for value in values):
            self.complete = False
            if self.short_circuit:
                return v
        for _, labels in results:
            self.witness.update(labels)
        if not isinstance(v, UnknownReason):
            self.witness[address] = v
        return v

    def _forced(self, node, address):
        self.complete = False
        deciding = 1 if node.kind is Kind.UNION else 0
        for i in range(self.fuel):
            v, labels = self._child(node, address, i)
            if v == deciding:
                self.witness.update(labels)
                self.witness[address] = v
                return v
            if not self.short_circuit:
                self.witness.update(labels)
        logger.debug("fuel %d exhausted at %s", self.fuel, address)
        return UnknownReason.FUEL_EXHAUSTED

    def _graph_value(self, node, address):
        self.complete = False
        ref = node.children
        labels = self._labels.get(id(ref.graph))
        if labels is None:
            labels = self._labels[id(ref.graph)] = graph_fixpoints(ref.graph, self.x)
        if not labels.determined(ref.name):
            return UnknownReason.UNDETERMINED_CYCLE
        self._strategy(ref.graph, labels, ref.name, address)
        return labels.least[ref.name]

    def _strategy(self, graph, labels, name, address):
        """Label along a winning strategy; chosen children always settled in an earlier round."""
        node = graph.node(name)
        v = labels.least[name]
        self.witness[address] = v
        if node.kind is Kind.LEAF:
            return
        deciding = 1 if node.kind is Kind.UNION else 0
        if v == deciding:
            if v == 1:
                candidates = [(labels.least_stage[c], i) for i, c in enumerate(node.children)
                              if labels.least[c] == 1]
            else:
                candidates = [(labels.greatest_stage[c], i) for i, c in enumerate(node.children)
                              if labels.greatest[c] == 0]
            _, chosen = min(candidates)
            self._strategy(graph, labels, node.children[chosen], address + (chosen,))
        else:
            for i, child in enumerate(node.children):
                self._strategy(graph, labels, child, address + (i,))


def _outcome(v, walker: _Walker) -> EvalOutcome:
    if isinstance(v, UnknownReason):
        return EvalOutcome(Verdict.UNKNOWN, v, walker.witness, complete=False)
    verdict = Verdict.IN if v == 1 else Verdict.OUT
    return EvalOutcome(verdict, None, walker.witness, complete=walker.complete)


def evaluate(t: BorelCode, x: Point, fuel: int = DEFAULT_FUEL) -> EvalOutcome:
    walker = _Walker(x, fuel, short_circuit=False)
    outcome = _outcome(walker.value(t, ()), walker)
    logger.debug("evaluate at %s with fuel %d: %s", x, fuel, outcome.summary())
    return outcome


def solve_strategy(t: BorelCode, x: Point, fuel: int = DEFAULT_FUEL) -> EvalOutcome:
    """Short-circuit evaluation that keeps only the children a winning strategy needs."""
    walker = _Walker(x, fuel, short_circuit=True)
    outcome = _outcome(walker.value(t, ()), walker)
    logger.debug("strategy at %s with fuel %d: %s", x, fuel, outcome.summary())
    return outcome


def evaluate_top_down(t: BorelCode, x: Point) -> Witness:
    """Total evaluation map of a fully expandable code, computed with an explicit stack.

    Values are memoized per node object, so shared subtrees are evaluated once.
    """
    for _ in iter_nodes(t):
        pass
    memo: Dict[int, int] = {}
    labels: Witness = {}
    stack = [((), t, False)]
    while stack:
        address, node, expanded = stack.pop()
        if node.is_leaf:
            memo[id(node)] = int(node.clopen.contains(x))
        elif not expanded:
            stack.append((address, node, True))
            for i in reversed(range(node.arity)):
                stack.append((address + (i,), node.child(i), False))
            continue
        else:
            kids = [labels[address + (i,)] for i in range(node.arity)]
            memo[id(node)] = max(kids, default=0) if node.kind is Kind.UNION else min(kids, default=1)
        labels[address] = memo[id(node)]
    return labels


def _resolve(t, address):
    try:
        return node_at(t, address)
    except BadAddress:
        return None


def check_evaluation_map(t: BorelCode, x: Point, f: Witness) -> bool:
    """Whether ``f`` is an evaluation map: every clause holds and defined nodes have all children defined."""
    if () not in f:
        return False
    for address, value in f.items():
        node = _resolve(t, address)
        if node is None or value not in (0, 1):
            return False
        if node.is_leaf:
            if value != int(node.clopen.contains(x)):
                return False
            continue
        if node.arity is None:
            return False
        kids = []
        for i in range(node.arity):
            if address + (i,) not in f:
                return False
            kids.append(f[address + (i,)])
        expected = max(kids, default=0) if node.kind is Kind.UNION else min(kids, default=1)
        if value != expected:
            return False
    return True


def check_strategy(t: BorelCode, x: Point, f: Witness) -> bool:
    """Whether ``f`` is a winning strategy.

    A union labeled 1 (intersection labeled 0) needs one defined child with the
    same label; a union labeled 0 (intersection labeled 1) needs every child
    defined with that label.
    """
    if () not in f:
        return False
    defined_children = defaultdict(list)
    for address in f:
        if address:
            defined_children[address[:-1]].append(address[-1])
    for address, value in f.items():
        node = _resolve(t, address)
        if node is None or value not in (0, 1):
            return False
        if node.is_leaf:
            if value != int(node.clopen.contains(x)):
                return False
            continue
        deciding = 1 if node.kind is Kind.UNION else 0
        if value == deciding:
            if not any(f[address + (i,)] == deciding for i in defined_children[address]):
                return False
        else:
            if node.arity is None:
                return False
            for i in range(node.arity):
                if f.get(address + (i,)) != value:
                    return False
    return True
