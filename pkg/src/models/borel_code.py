# src/models/borel_code.py
"""Labeled Borel codes.

A code is a rooted tree whose interior nodes are unions or intersections and
whose leaves carry clopen sets. Children come in one of three presentations:

* ``ExplicitList`` - a finite tuple of codes,
* ``LazyGenerator`` - a memoized map from index to code with a finite or
  infinite declared child count,
* ``GraphRef`` - a named node of a finite ``CodeGraph``; graph presentations
  may contain cycles and so describe ill-founded unfoldings.

Node addresses are tuples of child indices read from the root.
"""
import threading
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple, Union

from src.models.clopen import ClopenCode
from src.models.ordinal import ONE, ZERO, Ordinal
from src.utils.errors import WorkbenchError


class NoSuchChild(WorkbenchError):
    pass


class LeafHasNoChildren(WorkbenchError):
    pass


class Unbounded(WorkbenchError):
    pass


class BadAddress(WorkbenchError):
    pass


class UnboundRef(WorkbenchError):
    pass


class Kind(Enum):
    UNION = "union"
    INTERSECTION = "inter"
    LEAF = "leaf"

    def dual(self) -> "Kind":
        if self is Kind.UNION:
            return Kind.INTERSECTION
        if self is Kind.INTERSECTION:
            return Kind.UNION
        return self


Address = Tuple[int, ...]


def format_address(address: Address) -> str:
    return "<" + ",".join(str(i) for i in address) + ">"


@dataclass(frozen=True)
class ExplicitList:
    items: Tuple["BorelCode", ...] = ()

    @property
    def count(self) -> Optional[int]:
        return len(self.items)

    def get(self, n: int) -> "BorelCode":
        return self.items[n]


class LazyGenerator:
    """Children produced on demand by ``make(n)``; ``count=None`` means infinitely many.

    Each child is forced at most once, even under concurrent access.
    """

    def __init__(self, make: Callable[[int], "BorelCode"], count: Optional[int] = None):
        if count is not None and count < 0:
            raise ValueError("child count must be a natural number")
        self.make = make
        self.count = count
        self.generated = 0
        self._memo: Dict[int, "BorelCode"] = {}
        self._lock = threading.RLock()

    def get(self, n: int) -> "BorelCode":
        with self._lock:
            if n not in self._memo:
                self._memo[n] = self.make(n)
                self.generated += 1
            return self._memo[n]


@dataclass(frozen=True)
class GraphRef:
    graph: "CodeGraph"
    name: str

    @property
    def count(self) -> Optional[int]:
        return len(self.graph.node(self.name).children)

    def get(self, n: int) -> "BorelCode":
        return self.graph.code(self.graph.node(self.name).children[n])


Children = Union[ExplicitList, LazyGenerator, GraphRef]


@dataclass(frozen=True, eq=False)
class BorelCode:
    kind: Kind
    children: Children = field(default_factory=ExplicitList)
    clopen: Optional[ClopenCode] = None
    rank: Optional[Ordinal] = None

    def __post_init__(self):
        if self.kind is Kind.LEAF:
            if self.clopen is None:
                raise ValueError("a leaf needs a clopen set")
            if not isinstance(self.children, ExplicitList) or self.children.items:
                raise ValueError("leaves have no children")
        elif self.clopen is not None:
            raise ValueError("only leaves carry clopen sets")

    @property
    def is_leaf(self) -> bool:
        return self.kind is Kind.LEAF

    @property
    def is_graph_node(self) -> bool:
        return isinstance(self.children, GraphRef)

    @property
    def arity(self) -> Optional[int]:
        """Number of children, or None for an infinite generator."""
        return 0 if self.is_leaf else self.children.count

    def child(self, n: int) -> "BorelCode":
        return subtree(self, n)

    def with_rank(self, rank: Optional[Ordinal]) -> "BorelCode":
        return replace(self, rank=rank)


def leaf(clopen: ClopenCode, rank: Optional[Ordinal] = None) -> BorelCode:
    return BorelCode(Kind.LEAF, clopen=clopen, rank=rank)


def union(*children: BorelCode, rank: Optional[Ordinal] = None) -> BorelCode:
    return BorelCode(Kind.UNION, ExplicitList(tuple(children)), rank=rank)


def intersection(*children: BorelCode, rank: Optional[Ordinal] = None) -> BorelCode:
    return BorelCode(Kind.INTERSECTION, ExplicitList(tuple(children)), rank=rank)


def lazy(kind: Kind, make: Callable[[int], BorelCode], count: Optional[int] = None,
         rank: Optional[Ordinal] = None) -> BorelCode:
    return BorelCode(kind, LazyGenerator(make, count), rank=rank)


def subtree(t: BorelCode, n: int) -> BorelCode:
    if t.is_leaf:
        raise LeafHasNoChildren("a leaf has no children")
    count = t.children.count
    if n < 0 or (count is not None and n >= count):
        raise NoSuchChild(f"child {n} out of range for a node with {count} children")
    return t.children.get(n)


def node_at(t: BorelCode, address: Address) -> BorelCode:
    node = t
    for depth, index in enumerate(address):
        try:
            node = subtree(node, index)
        except (NoSuchChild, LeafHasNoChildren) as exc:
            raise BadAddress(f"{format_address(address)} leaves the tree at depth {depth}: {exc}") from exc
    return node


def iter_nodes(t: BorelCode) -> Iterator[Tuple[Address, BorelCode]]:
    """Walk every node of a fully expandable code in address order."""
    yield from _walk(t, (), frozenset())


def _walk(node, address, on_path):
    yield address, node
    if node.is_leaf:
        return
    count = node.arity
    if count is None:
        raise Unbounded(f"node {format_address(address)} has infinitely many children")
    if node.is_graph_node:
        key = (id(node.children.graph), node.children.name)
        if key in on_path:
            raise Unbounded(f"node {format_address(address)} lies on a cycle through {node.children.name!r}")
        on_path = on_path | {key}
    for i in range(count):
        yield from _walk(node.child(i), address + (i,), on_path)


def is_expandable(t: BorelCode) -> bool:
    try:
        for _ in iter_nodes(t):
            pass
    except Unbounded:
        return False
    return True


@dataclass(frozen=True)
class RankReport:
    ok: bool
    address: Optional[Address] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_ranked(t: BorelCode, bound: Ordinal) -> RankReport:
    """Check that annotated ranks strictly descend and the root sits at or below ``bound``."""
    if t.rank is not None and t.rank > bound:
        return RankReport(False, (), f"root rank {t.rank} exceeds bound {bound}")
    for address, node in iter_nodes(t):
        if node.is_leaf or node.rank is None:
            continue
        for i in range(node.arity):
            child_rank = node.child(i).rank
            if child_rank is not None and not child_rank < node.rank:
                return RankReport(False, address + (i,),
                                  f"rank {child_rank} is not below parent rank {node.rank}")
    return RankReport(True)


def is_fully_ranked(t: BorelCode) -> bool:
    return all(node.rank is not None for _, node in iter_nodes(t))


def with_height_ranks(t: BorelCode) -> BorelCode:
    """Annotate every node with its height; the result uses explicit children throughout."""
    for _ in iter_nodes(t):
        pass
    return _height_ranked(t)


def _height_ranked(t):
    if t.is_leaf:
        return t.with_rank(ZERO)
    kids = tuple(_height_ranked(t.child(i)) for i in range(t.arity))
    height = max((k.rank for k in kids), default=ZERO) + ONE
    return BorelCode(t.kind, ExplicitList(kids), rank=height)


def negate(t: BorelCode) -> BorelCode:
    """Swap unions and intersections and complement every leaf, keeping shape and ranks."""
    if t.is_leaf:
        return BorelCode(Kind.LEAF, clopen=t.clopen.complement(), rank=t.rank)
    children = t.children
    if isinstance(children, GraphRef):
        return children.graph.negated().code(children.name)
    if isinstance(children, ExplicitList):
        negated = ExplicitList(tuple(negate(c) for c in children.items))
    else:
        negated = LazyGenerator(lambda n, source=t: negate(source.child(n)), children.count)
    return BorelCode(t.kind.dual(), negated, rank=t.rank)


def structurally_equal(a: BorelCode, b: BorelCode, compare_ranks: bool = True) -> bool:
    if a is b:
        return True
    if a.kind is not b.kind:
        return False
    if compare_ranks and a.rank != b.rank:
        return False
    if a.is_leaf:
        return a.clopen == b.clopen
    if a.arity is None or a.arity != b.arity:
        return False
    return all(structurally_equal(a.child(i), b.child(i), compare_ranks) for i in range(a.arity))


@dataclass(frozen=True)
class GraphNode:
    kind: Kind
    clopen: Optional[ClopenCode] = None
    children: Tuple[str, ...] = ()
    rank: Optional[Ordinal] = None
    anonymous: bool = False


class CodeGraph:
    """A finite table of named nodes; children refer to other nodes by name."""

    def __init__(self, nodes: Mapping[str, GraphNode]):
        self._nodes = dict(nodes)
        for name, node in self._nodes.items():
            if node.kind is Kind.LEAF and (node.children or node.clopen is None):
                raise ValueError(f"graph leaf {name!r} must carry a clopen set and no children")
            for child in node.children:
                if child not in self._nodes:
                    raise UnboundRef(f"node {name!r} refers to undefined node {child!r}")
        self._codes: Dict[str, BorelCode] = {}
        self._negated: Optional["CodeGraph"] = None
        self._lock = threading.RLock()

    @property
    def names(self):
        return list(self._nodes)

    def node(self, name: str) -> GraphNode:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnboundRef(f"undefined node {name!r}") from None

    def code(self, name: str) -> BorelCode:
        with self._lock:
            if name not in self._codes:
                node = self.node(name)
                if node.kind is Kind.LEAF:
                    self._codes[name] = BorelCode(Kind.LEAF, clopen=node.clopen, rank=node.rank)
                else:
                    self._codes[name] = BorelCode(node.kind, GraphRef(self, name), rank=node.rank)
            return self._codes[name]

    def reachable(self, name: str):
        order, seen, stack = [], set(), [name]
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            order.append(current)
            stack.extend(reversed(self.node(current).children))
        return order

    def has_cycle(self, name: str) -> bool:
        visiting, done = set(), set()

        def visit(current):
            visiting.add(current)
            for child in self.node(current).children:
                if child in visiting:
                    return True
                if child not in done and visit(child):
                    return True
            visiting.discard(current)
            done.add(current)
            return False

        return visit(name)

    def negated(self) -> "CodeGraph":
        with self._lock:
            if self._negated is None:
                flipped = {
                    name: replace(
                        node,
                        kind=node.kind.dual(),
                        clopen=node.clopen.complement() if node.clopen is not None else None,
                    )
                    for name, node in self._nodes.items()
                }
                self._negated = CodeGraph(flipped)
                self._negated._negated = self
            return self._negated

    @classmethod
    def from_code(cls, t: BorelCode) -> "CodeGraph":
        """Present a fully expandable tree as a graph; nodes are named ``@`` plus their address."""
        nodes = {}
        for address, node in iter_nodes(t):
            name = "@" + ".".join(str(i) for i in address)
            kids = tuple(name + ("." if address else "") + str(i) for i in range(node.arity))
            nodes[name] = GraphNode(node.kind, node.clopen, kids, node.rank, anonymous=True)
        return cls(nodes)
