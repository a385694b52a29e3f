# src/utils/code_parser.py
"""Reader and printer for the code file language.

    (def name node)            top-level binding, may refer to itself
    (union :rank w node ...)   (inter ...) likewise
    (leaf :rank 0 {[01], [1], [**0]}) also `empty` and `full`; `*` matches either bit
    (ref name)

A file is any number of bindings followed by one root node. ``;`` starts a
comment running to the end of the line.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from src.models.borel_code import (BorelCode, CodeGraph, GraphNode, Kind, UnboundRef, intersection, leaf,
                                   union)
from src.models.clopen import ClopenCode
from src.models.ordinal import Ordinal, OrdinalSyntaxError, format_ordinal, parse_ordinal
from src.utils.decoration import DecorationFamily
from src.utils.errors import ParseError

logger = logging.getLogger(__name__)


class CodeSyntaxError(ParseError):
    pass


# --- Reader ---

@dataclass
class Atom:
    text: str
    loc: Tuple[int, int]


@dataclass
class SList:
    items: List[Union["SList", Atom]]
    loc: Tuple[int, int]


class Input:
    def __init__(self, text: str):
        self.text = text
        self.index = 0
        self.line = 1
        self.column = 1

    def peek(self) -> Optional[str]:
        return self.text[self.index] if self.index < len(self.text) else None

    def advance(self) -> str:
        ch = self.text[self.index]
        self.index += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch

    def loc(self) -> Tuple[int, int]:
        return (self.line, self.column)

    def error(self, message, loc=None):
        line, column = loc or self.loc()
        raise CodeSyntaxError(message, line, column)


def _skip(inp: Input):
    while inp.peek() is not None:
        if inp.peek().isspace():
            inp.advance()
        elif inp.peek() == ";":
            while inp.peek() not in (None, "\n"):
                inp.advance()
        else:
            return


def _read_set(inp: Input) -> str:
    start = inp.loc()
    chars = []
    while inp.peek() != "}":
        if inp.peek() is None:
            inp.error("unclosed '{'", start)
        chars.append(inp.advance())
    chars.append(inp.advance())
    return "".join(chars)


def _read_symbol(inp: Input) -> str:
    chars = []
    while inp.peek() is not None and not inp.peek().isspace() and inp.peek() not in "();":
        chars.append(inp.advance())
        if chars[-1] == "^" and inp.peek() == "(":
            depth = 0
            while True:
                if inp.peek() is None:
                    inp.error("unclosed '(' in exponent")
                ch = inp.advance()
                chars.append(ch)
                depth += {"(": 1, ")": -1}.get(ch, 0)
                if depth == 0:
                    break
    return "".join(chars)


def _read_items(inp: Input, closing: bool) -> List[Union[SList, Atom]]:
    items = []
    while True:
        _skip(inp)
        ch = inp.peek()
        if ch is None:
            if closing:
                inp.error("expected ')'")
            return items
        loc = inp.loc()
        if ch == "(":
            inp.advance()
            items.append(SList(_read_items(inp, True), loc))
        elif ch == ")":
            if not closing:
                inp.error("unexpected ')'")
            inp.advance()
            return items
        elif ch == "{":
            items.append(Atom(_read_set(inp), loc))
        else:
            items.append(Atom(_read_symbol(inp), loc))


def read_sexprs(text: str) -> List[Union[SList, Atom]]:
    return _read_items(Input(text), False)


# --- Interpretation ---

_CYLINDER = re.compile(r"\s*\[([01*]*)\]\s*")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_'\-]*$")


def parse_clopen(atom: Atom) -> ClopenCode:
    text = atom.text
    if text == "empty":
        return ClopenCode.empty()
    if text == "full":
        return ClopenCode.full()
    if not (text.startswith("{") and text.endswith("}")):
        raise CodeSyntaxError(f"expected a clopen set, found {text!r}", *atom.loc)
    body = text[1:-1]
    cylinders = []
    if body.strip():
        for part in body.split(","):
            match = _CYLINDER.fullmatch(part)
            if not match:
                raise CodeSyntaxError(f"bad cylinder {part.strip()!r}", *atom.loc)
            cylinders.append(match.group(1))
    return ClopenCode.of(*cylinders)


def _parse_rank(atom: Atom) -> Ordinal:
    try:
        return parse_ordinal(atom.text)
    except OrdinalSyntaxError as exc:
        raise CodeSyntaxError(f"bad rank: {exc.message}", atom.loc[0], atom.loc[1] + (exc.column or 1) - 1) from None


def _head(form, what="a node") -> str:
    if not isinstance(form, SList) or not form.items or not isinstance(form.items[0], Atom):
        loc = form.loc
        raise CodeSyntaxError(f"expected {what}", *loc)
    return form.items[0].text


def _split_rank(form: SList) -> Tuple[Optional[Ordinal], list]:
    rank, rest = None, []
    items = form.items[1:]
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, Atom) and item.text == ":rank":
            if i + 1 >= len(items) or not isinstance(items[i + 1], Atom):
                raise CodeSyntaxError(":rank needs an ordinal", *item.loc)
            if rank is not None:
                raise CodeSyntaxError("rank given twice", *item.loc)
            rank = _parse_rank(items[i + 1])
            i += 2
        else:
            rest.append(item)
            i += 1
    return rank, rest


_KINDS = {"union": Kind.UNION, "inter": Kind.INTERSECTION}


class _Builder:
    """Turns forms into codes; with bindings present every node lives in one CodeGraph."""

    def __init__(self, defs: Dict[str, SList]):
        self.defs = defs
        self.nodes: Dict[str, GraphNode] = {}

    def tree(self, form) -> BorelCode:
        head = _head(form)
        rank, rest = _split_rank(form)
        if head == "leaf":
            return leaf(self._leaf_clopen(form, rest), rank=rank)
        if head in _KINDS:
            children = [self.tree(item) for item in self._children(form, rest)]
            build = union if head == "union" else intersection
            return build(*children, rank=rank)
        if head == "ref":
            name = self._ref_name(form, rest, rank)
            raise UnboundRef(f"{form.loc[0]}:{form.loc[1]}: undefined node {name!r}")
        raise CodeSyntaxError(f"unknown node kind {head!r}", *form.loc)

    def graph_node(self, form, name: str, anonymous: bool) -> str:
        """Add ``form`` under ``name`` and return the name its parent should point at."""
        head = _head(form)
        rank, rest = _split_rank(form)
        if head == "ref":
            target = self._ref_name(form, rest, rank)
            if target not in self.defs:
                raise UnboundRef(f"{form.loc[0]}:{form.loc[1]}: undefined node {target!r}")
            if anonymous:
                return target
            # a binding that is only a reference still needs a node of its own
            self.nodes[name] = GraphNode(Kind.UNION, None, (target,), rank)
            return name
        if head == "leaf":
            self.nodes[name] = GraphNode(Kind.LEAF, self._leaf_clopen(form, rest), (), rank, anonymous)
            return name
        if head in _KINDS:
            prefix = name if anonymous else "@" + name
            kids = tuple(self.graph_node(item, f"{prefix}.{i}", True)
                         for i, item in enumerate(self._children(form, rest)))
            self.nodes[name] = GraphNode(_KINDS[head], None, kids, rank, anonymous)
            return name
        raise CodeSyntaxError(f"unknown node kind {head!r}", *form.loc)

    @staticmethod
    def _leaf_clopen(form, rest):
        if len(rest) != 1 or not isinstance(rest[0], Atom):
            raise CodeSyntaxError("a leaf takes exactly one clopen set", *form.loc)
        return parse_clopen(rest[0])

    @staticmethod
    def _children(form, rest):
        if not rest:
            raise CodeSyntaxError(f"({_head(form)}) needs at least one child", *form.loc)
        for item in rest:
            if not isinstance(item, SList):
                raise CodeSyntaxError(f"expected a node, found {item.text!r}", *item.loc)
        return rest

    @staticmethod
    def _ref_name(form, rest, rank):
        if rank is not None:
            raise CodeSyntaxError("a reference cannot carry a rank", *form.loc)
        if len(rest) != 1 or not isinstance(rest[0], Atom) or not _NAME.match(rest[0].text):
            raise CodeSyntaxError("(ref) takes one name", *form.loc)
        return rest[0].text


def parse_code_file(text: str) -> BorelCode:
    forms = read_sexprs(text)
    defs: Dict[str, SList] = {}
    roots = []
    for form in forms:
        if isinstance(form, SList) and form.items and isinstance(form.items[0], Atom) \
                and form.items[0].text == "def":
            if len(form.items) != 3 or not isinstance(form.items[1], Atom) or not _NAME.match(form.items[1].text):
                raise CodeSyntaxError("expected (def name node)", *form.loc)
            name = form.items[1].text
            if name in defs:
                raise CodeSyntaxError(f"{name!r} is bound twice", *form.loc)
            if roots:
                raise CodeSyntaxError("bindings must come before the root node", *form.loc)
            defs[name] = form.items[2]
        else:
            roots.append(form)
    if len(roots) != 1:
        loc = roots[1].loc if len(roots) > 1 else (1, 1)
        raise CodeSyntaxError("a code file holds exactly one root node", *loc)
    builder = _Builder(defs)
    if not defs:
        return builder.tree(roots[0])
    for name, form in defs.items():
        builder.graph_node(form, name, anonymous=False)
    root = builder.graph_node(roots[0], "@", anonymous=True)
    graph = CodeGraph(builder.nodes)
    logger.debug("parsed %d bindings into %d graph nodes", len(defs), len(builder.nodes))
    return graph.code(root)


def parse_family_file(text: str) -> DecorationFamily:
    """``(positive node)``, ``(negative node)`` and one ``(bound ordinal)``."""
    positives, negatives, bound = [], [], None
    builder = _Builder({})
    for form in read_sexprs(text):
        head = _head(form, "(positive ...), (negative ...) or (bound ...)")
        if head in ("positive", "negative"):
            if len(form.items) != 2:
                raise CodeSyntaxError(f"({head}) takes one node", *form.loc)
            (positives if head == "positive" else negatives).append(builder.tree(form.items[1]))
        elif head == "bound":
            if len(form.items) != 2 or not isinstance(form.items[1], Atom) or bound is not None:
                raise CodeSyntaxError("expected a single (bound ordinal)", *form.loc)
            bound = _parse_rank(form.items[1])
        else:
            raise CodeSyntaxError(f"unknown family entry {head!r}", *form.loc)
    if bound is None:
        raise CodeSyntaxError("the family has no (bound ...)", 1, 1)
    return DecorationFamily(tuple(positives), tuple(negatives), bound)


# --- Printer ---

def _rank_text(rank):
    return "" if rank is None else f" :rank {format_ordinal(rank, spaced=False)}"


class _Printer:
    def __init__(self):
        self.names: Dict[Tuple[int, str], str] = {}
        self.pending: List[Tuple[CodeGraph, str]] = []

    def name_for(self, graph: CodeGraph, name: str) -> str:
        key = (id(graph), name)
        if key not in self.names:
            printed, n = name, 1
            while printed in self.names.values():
                n += 1
                printed = f"{name}_{n}"
            self.names[key] = printed
            self.pending.append((graph, name))
        return self.names[key]

    def graph_form(self, graph: CodeGraph, name: str, inline: bool) -> str:
        node = graph.node(name)
        if not inline and not node.anonymous:
            return f"(ref {self.name_for(graph, name)})"
        if node.kind is Kind.LEAF:
            return f"(leaf{_rank_text(node.rank)} {node.clopen})"
        kids = " ".join(self.graph_form(graph, child, False) for child in node.children)
        return f"({'union' if node.kind is Kind.UNION else 'inter'}{_rank_text(node.rank)} {kids})"

    def form(self, t: BorelCode) -> str:
        if t.is_graph_node:
            return self.graph_form(t.children.graph, t.children.name, False)
        if t.is_leaf:
            return f"(leaf{_rank_text(t.rank)} {t.clopen})"
        if t.arity is None:
            raise ValueError("an infinite node has no printed form")
        kids = " ".join(self.form(t.child(i)) for i in range(t.arity))
        return f"({'union' if t.kind is Kind.UNION else 'inter'}{_rank_text(t.rank)} {kids})"


def format_code(t: BorelCode) -> str:
    """Print ``t``; named graph nodes become bindings, one per line, before the root."""
    printer = _Printer()
    root = printer.form(t)
    lines = []
    done = 0
    while done < len(printer.pending):
        graph, name = printer.pending[done]
        done += 1
        lines.append(f"(def {printer.names[(id(graph), name)]} {printer.graph_form(graph, name, True)})")
    lines.append(root)
    return "\n".join(lines)
