# src/models/fin_partition.py
"""Partitions of the natural numbers given by a finite table and an eventual rule."""
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from src.utils.errors import ParseError, WorkbenchError


class PartitionSyntaxError(ParseError):
    pass


class NotMonotone(WorkbenchError):
    pass


@dataclass(frozen=True)
class Cycle:
    """n past the table belongs to pattern[(n - cutoff) % len(pattern)]."""
    pattern: Tuple[int, ...]


@dataclass(frozen=True)
class Fresh:
    """n past the table opens new blocks: base + (n - cutoff) // width, each a run of ``width``."""
    base: int
    width: int


Rule = Union[Cycle, Fresh]


def periodic(base: int, m: int) -> Cycle:
    return Cycle(tuple(range(base, base + m)))


def tail(b: int) -> Cycle:
    return Cycle((b,))


def _primitive(pattern):
    for d in range(1, len(pattern) + 1):
        if len(pattern) % d == 0 and pattern[:d] * (len(pattern) // d) == pattern:
            return pattern[:d]
    return pattern


@dataclass(frozen=True)
class FinPartition:
    """Blocks are numbered by least element, so equal partitions have equal presentations.

    Construction shortens the table as far as the rule allows (the same
    canonicalization a Point applies to its prefix).
    """

    table: Tuple[int, ...]
    rule: Rule

    def __post_init__(self):
        table, rule = tuple(self.table), self.rule
        if isinstance(rule, Cycle):
            if not rule.pattern:
                raise ValueError("a cycle rule needs a nonempty pattern")
            pattern = _primitive(tuple(rule.pattern))
            while table and table[-1] == pattern[-1]:
                table = table[:-1]
                pattern = pattern[-1:] + pattern[:-1]
            rule = Cycle(pattern)
        elif isinstance(rule, Fresh):
            if rule.width < 1 or rule.base < 0:
                raise ValueError(f"bad fresh rule {rule!r}")
            while (rule.base > 0 and len(table) >= rule.width
                   and table[-rule.width:] == (rule.base - 1,) * rule.width
                   and rule.base - 1 not in table[:-rule.width]):
                table = table[:-rule.width]
                rule = Fresh(rule.base - 1, rule.width)
        else:
            raise TypeError(f"not a rule: {rule!r}")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "rule", rule)
        self._check_order()

    def _check_order(self):
        window = self.cutoff + (len(self.rule.pattern) if isinstance(self.rule, Cycle) else self.rule.width)
        seen = 0
        for n in range(window):
            b = self.block_of(n)
            if b > seen or b < 0:
                raise ValueError(f"block {b} first appears at {n}, before block {seen}")
            if b == seen:
                seen += 1
        if isinstance(self.rule, Fresh) and self.rule.base != len(set(self.table)):
            raise ValueError(f"fresh blocks must start at {len(set(self.table))}, not {self.rule.base}")

    @property
    def cutoff(self) -> int:
        return len(self.table)

    @property
    def block_count(self) -> Optional[int]:
        """Number of blocks, or None when there are infinitely many."""
        if isinstance(self.rule, Fresh):
            return None
        return max(self.table + self.rule.pattern) + 1

    @property
    def is_infinite(self) -> bool:
        return self.block_count is None

    @property
    def period(self) -> int:
        return len(self.rule.pattern) if isinstance(self.rule, Cycle) else self.rule.width

    def block_of(self, n: int) -> int:
        if n < 0:
            raise IndexError("partitions are of the natural numbers")
        if n < self.cutoff:
            return self.table[n]
        if isinstance(self.rule, Cycle):
            return self.rule.pattern[(n - self.cutoff) % len(self.rule.pattern)]
        return self.rule.base + (n - self.cutoff) // self.rule.width

    def first_member(self, block: int) -> int:
        """Least element of ``block``."""
        if block in self.table:
            return self.table.index(block)
        if isinstance(self.rule, Cycle):
            if block not in self.rule.pattern:
                raise IndexError(f"no block {block}")
            return self.cutoff + self.rule.pattern.index(block)
        if block < self.rule.base:
            raise IndexError(f"no block {block}")
        return self.cutoff + (block - self.rule.base) * self.rule.width

    def expand(self, n: int) -> List[int]:
        return [self.block_of(i) for i in range(n)]

    def blocks(self, n: int) -> Iterator[Tuple[int, List[int]]]:
        """Each block meeting 0 .. n - 1 with its members there."""
        members = {}
        for i in range(n):
            members.setdefault(self.block_of(i), []).append(i)
        return iter(sorted(members.items()))

    @classmethod
    def from_labels(cls, table: Sequence, pattern: Sequence) -> "FinPartition":
        """Renumber arbitrary labels by first appearance; the pattern repeats forever."""
        names = {}
        for label in list(table) + list(pattern):
            names.setdefault(label, len(names))
        return cls(tuple(names[x] for x in table), Cycle(tuple(names[x] for x in pattern)))

    @classmethod
    def singletons(cls) -> "FinPartition":
        return cls((), Fresh(0, 1))

    @classmethod
    def parse(cls, text: str) -> "FinPartition":
        return parse_partition(text)

    def __str__(self):
        table = ",".join(f"{n}→{b}" for n, b in enumerate(self.table))
        return f"table: {table}; rule: {format_rule(self.rule)}"


def format_rule(rule: Rule) -> str:
    if isinstance(rule, Fresh):
        return f"fresh({rule.base},{rule.width})"
    pattern = rule.pattern
    if len(pattern) == 1:
        return f"tail({pattern[0]})"
    if pattern == tuple(range(pattern[0], pattern[0] + len(pattern))):
        return f"periodic({pattern[0]},{len(pattern)})"
    return "cycle(" + ",".join(map(str, pattern)) + ")"


_FORM = re.compile(r"^\s*table:\s*(?P<table>[^;]*);\s*rule:\s*(?P<name>[a-z]+)\((?P<args>[^)]*)\)\s*$")
_ENTRY = re.compile(r"^\s*(\d+)\s*(?:->|→)\s*(\d+)\s*$")


def parse_partition(text: str) -> FinPartition:
    match = _FORM.match(text)
    if not match:
        raise PartitionSyntaxError("expected 'table: n->b,...; rule: name(args)'", 1, 1)
    entries = [e for e in match.group("table").split(",") if e.strip()]
    table = []
    for position, entry in enumerate(entries):
        pair = _ENTRY.match(entry)
        if not pair or int(pair.group(1)) != position:
            raise PartitionSyntaxError(f"table entry {entry.strip()!r} should map {position}",
                                       1, match.start("table") + 1)
        table.append(int(pair.group(2)))
    try:
        args = tuple(int(a) for a in match.group("args").split(",") if a.strip())
    except ValueError:
        raise PartitionSyntaxError("rule arguments must be numbers", 1, match.start("args") + 1) from None
    name = match.group("name")
    arity = {"periodic": 2, "tail": 1, "fresh": 2}
    if name in arity and len(args) != arity[name] or name == "cycle" and not args:
        raise PartitionSyntaxError(f"wrong number of arguments to {name}", 1, match.start("args") + 1)
    if name == "periodic":
        rule = periodic(*args)
    elif name == "tail":
        rule = tail(*args)
    elif name == "cycle":
        rule = Cycle(args)
    elif name == "fresh":
        rule = Fresh(*args)
    else:
        raise PartitionSyntaxError(f"unknown rule {name!r}", 1, match.start("name") + 1)
    try:
        return FinPartition(tuple(table), rule)
    except ValueError as exc:
        raise PartitionSyntaxError(str(exc), 1, 1) from None


@dataclass(frozen=True)
class MonotoneMap:
    """Strictly increasing f given by its first values and f(i) = slope * i + offset afterwards."""

    table: Tuple[int, ...]
    slope: int
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.slope < 1:
            raise NotMonotone(f"slope {self.slope} is not positive")
        values = list(self.table) + [self.slope * len(self.table) + self.offset]
        if values[0] < 0:
            raise NotMonotone("values must be natural numbers")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise NotMonotone(f"{values} is not strictly increasing")

    @classmethod
    def linear(cls, slope: int, offset: int = 0) -> "MonotoneMap":
        return cls((), slope, offset)

    def __call__(self, i: int) -> int:
        if i < len(self.table):
            return self.table[i]
        return self.slope * i + self.offset

    def __str__(self):
        head = ",".join(map(str, self.table))
        return f"[{head}] then {self.slope}i+{self.offset}" if head else f"{self.slope}i+{self.offset}"
