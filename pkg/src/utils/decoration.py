# src/utils/decoration.py
"""The decoration combinator and the evaluation-extension procedure built on it.

``decorate(t, family)`` rebuilds a ranked code so that every union node also
gets, as extra children, the decorated positives ranked strictly below it, and
every intersection node gets the decorated negations of the negatives ranked
strictly below it. Original children come first, then family members in
family order.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple

from src.models.borel_code import (Address, BorelCode, ExplicitList, Kind, Unbounded, check_ranked,
                                   format_address, is_fully_ranked, iter_nodes, leaf, negate, node_at)
from src.models.clopen import ClopenCode
from src.models.eval_outcome import Witness
from src.models.ordinal import ONE, Ordinal
from src.models.point import Point
from src.utils.errors import WorkbenchError
from src.utils.evaluator import check_evaluation_map

logger = logging.getLogger(__name__)


class UnrankedInput(WorkbenchError):
    pass


class ZeroRank(WorkbenchError):
    pass


class InvalidPartialMap(WorkbenchError):
    pass


class HypothesisViolation(WorkbenchError):
    pass


class FrontierMode(Enum):
    UNION_FRONTIER = "union"
    INTERSECTION_FRONTIER = "inter"


class Side(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def require_ranked(t: BorelCode, bound: Ordinal, what: str = "code") -> None:
    for address, node in iter_nodes(t):
        if node.rank is None:
            raise UnrankedInput(f"{what} has no rank at {format_address(address)}")
    report = check_ranked(t, bound)
    if not report:
        raise UnrankedInput(f"{what} is not ranked in {bound} at {format_address(report.address)}: {report.reason}")


@dataclass(frozen=True)
class DecorationFamily:
    positives: Tuple[BorelCode, ...]
    negatives: Tuple[BorelCode, ...]
    bound: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        for i, code in enumerate(self.positives):
            require_ranked(code, self.bound, f"positive {i}")
        for i, code in enumerate(self.negatives):
            require_ranked(code, self.bound, f"negative {i}")


class _Decorator:
    def __init__(self, family: DecorationFamily):
        self.family = family
        self._memo: Dict[int, BorelCode] = {}
        self._negated = [negate(n) for n in family.negatives]

    def run(self, t: BorelCode) -> BorelCode:
        key = id(t)
        if key in self._memo:
            return self._memo[key]
        if t.is_leaf:
            result = t
        else:
            kids = [self.run(t.child(i)) for i in range(t.arity)]
            if t.kind is Kind.UNION:
                kids.extend(self.run(p) for p in self.family.positives if p.rank < t.rank)
            else:
                kids.extend(self.run(neg) for n, neg in zip(self.family.negatives, self._negated)
                            if n.rank < t.rank)
            result = BorelCode(t.kind, ExplicitList(tuple(kids)), rank=t.rank)
        self._memo[key] = result
        return result


def decorate(t: BorelCode, family: DecorationFamily) -> BorelCode:
    require_ranked(t, family.bound)
    return _Decorator(family).run(t)


def normalize_root_intersection(p: BorelCode) -> BorelCode:
    """Wrap ``p`` in a one-child intersection whose rank is one more than ``p``'s."""
    if p.rank is None:
        raise UnrankedInput("only ranked codes can be normalized")
    return BorelCode(Kind.INTERSECTION, ExplicitList((p,)), rank=p.rank + ONE)


def base_tree(alpha: Ordinal) -> BorelCode:
    if alpha.is_zero:
        raise ZeroRank("the base tree needs a positive rank")
    return BorelCode(Kind.UNION, ExplicitList((leaf(ClopenCode.empty(), rank=Ordinal()),)), rank=alpha)


def decorated_family(family: DecorationFamily) -> DecorationFamily:
    """Root-normalize every positive and raise the bound by one to make room."""
    return DecorationFamily(
        tuple(normalize_root_intersection(p) for p in family.positives),
        family.negatives,
        family.bound + ONE,
    )


def frontier(t: BorelCode, sigma: Address, mode: FrontierMode) -> set:
    """Descendants of ``sigma`` of the collected kind (or leaves), reached through the other kind only."""
    start = node_at(t, sigma)
    collect = Kind.UNION if mode is FrontierMode.UNION_FRONTIER else Kind.INTERSECTION
    found = set()
    if start.is_leaf:
        return found
    stack = [(sigma, start)]
    while stack:
        address, node = stack.pop()
        if node.arity is None:
            raise Unbounded(f"node {format_address(address)} has infinitely many children")
        for i in range(node.arity):
            child = node.child(i)
            child_address = address + (i,)
            if child.is_leaf or child.kind is collect:
                found.add(child_address)
            else:
                stack.append((child_address, child))
    return found


def restrict_by_rank(t: BorelCode, f: Witness, gamma: Ordinal) -> Witness:
    """The part of a labeling that lives on nodes of rank at most ``gamma``."""
    return {address: value for address, value in f.items() if node_at(t, address).rank <= gamma}


def _check_partial(t, x, g0, gamma, nodes):
    for address, node in nodes:
        if node.rank <= gamma and address not in g0:
            raise InvalidPartialMap(f"no value at {format_address(address)} of rank {node.rank} <= {gamma}")
    by_address = dict(nodes)
    for address, value in g0.items():
        node = by_address.get(address)
        if node is None:
            raise InvalidPartialMap(f"{format_address(address)} is not a node of the code")
        if node.is_leaf:
            if value != int(node.clopen.contains(x)):
                raise InvalidPartialMap(f"leaf value at {format_address(address)} contradicts membership")
            continue
        kids = []
        for i in range(node.arity):
            if address + (i,) not in g0:
                raise InvalidPartialMap(f"{format_address(address)} is defined but child {i} is not")
            kids.append(g0[address + (i,)])
        expected = max(kids, default=0) if node.kind is Kind.UNION else min(kids, default=1)
        if value != expected:
            raise InvalidPartialMap(f"value at {format_address(address)} breaks the {node.kind.value} clause")


def extend_evaluation(t: BorelCode, x: Point, gamma: Ordinal, side: Side, g0: Witness) -> Witness:
    """Extend a map defined on every node of rank at most ``gamma`` to a total evaluation map.

    POSITIVE: unions above ``gamma`` get 1; an intersection gets 1 iff every
    node of its union frontier that is a leaf or has rank at most ``gamma``
    is labeled 1. NEGATIVE is the dual.
    """
    nodes = list(iter_nodes(t))
    if not is_fully_ranked(t):
        raise UnrankedInput("extension needs every node ranked")
    _check_partial(t, x, g0, gamma, nodes)
    if len(g0) == len(nodes):
        return dict(g0)

    g = dict(g0)
    for address, node in nodes:
        if address not in g and node.is_leaf:
            g[address] = int(node.clopen.contains(x))

    if side is Side.POSITIVE:
        settled, decided_value, mode = Kind.UNION, 1, FrontierMode.UNION_FRONTIER
    else:
        settled, decided_value, mode = Kind.INTERSECTION, 0, FrontierMode.INTERSECTION_FRONTIER

    for address, node in nodes:
        if address in g:
            continue
        if node.kind is settled:
            g[address] = decided_value
            continue
        relevant = [
            tau for tau in frontier(t, address, mode)
            if node_at(t, tau).is_leaf or node_at(t, tau).rank <= gamma
        ]
        if side is Side.POSITIVE:
            g[address] = int(all(g[tau] == 1 for tau in relevant))
        else:
            g[address] = int(any(g[tau] == 1 for tau in relevant))

    logger.debug("extended %d of %d labels above rank %s", len(g) - len(g0), len(nodes), gamma)
    if not check_evaluation_map(t, x, g):
        raise HypothesisViolation(f"the extension above rank {gamma} is not an evaluation map at {x}")
    return g


def decorate_base(alpha: Ordinal, positives: Sequence[BorelCode], negatives: Sequence[BorelCode]) -> BorelCode:
    """Decorate a base tree by the root-normalized family.

    Both the tree and the family end up at rank ``alpha + 1``; only members
    ranked strictly below ``alpha`` reach the root.
    """
    family = decorated_family(DecorationFamily(tuple(positives), tuple(negatives), alpha))
    return decorate(base_tree(family.bound), family)
