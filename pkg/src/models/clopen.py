# src/models/clopen.py
from dataclasses import dataclass
from typing import FrozenSet, Iterable

from src.models.point import Point

ANY_BIT = "*"


def _covers(general: str, specific: str) -> bool:
    """True when every point matching ``specific`` also matches ``general``."""
    if len(general) > len(specific):
        return False
    return all(g == ANY_BIT or g == s for g, s in zip(general, specific))


def _antichain(cylinders: Iterable[str]) -> FrozenSet[str]:
    pool = set(cylinders)
    for cyl in pool:
        if any(ch not in "01" + ANY_BIT for ch in cyl):
            raise ValueError(f"cylinder {cyl!r} is not a bit pattern")
    return frozenset(
        cyl for cyl in pool
        if not any(other != cyl and _covers(other, cyl) for other in pool)
    )


def _complement(relative: FrozenSet[str], stem: str):
    if "" in relative:
        return []
    if not relative:
        return [stem]
    out = []
    for bit in "01":
        below = frozenset(c[1:] for c in relative if c[0] in (bit, ANY_BIT))
        out.extend(_complement(below, stem + bit))
    return out


@dataclass(frozen=True)
class ClopenCode:
    """A finite union of basic cylinders, kept as an antichain of bit patterns.

    A pattern is a string over ``0``, ``1`` and ``*``; position i constrains
    bit i of a point and ``*`` leaves it free. Plain bit strings are ordinary
    cylinders. Patterns keep sets such as {x : x(n) = b} at size one.
    """

    cylinders: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "cylinders", _antichain(self.cylinders))

    @classmethod
    def empty(cls) -> "ClopenCode":
        return cls(frozenset())

    @classmethod
    def full(cls) -> "ClopenCode":
        return cls(frozenset({""}))

    @classmethod
    def of(cls, *cylinders: str) -> "ClopenCode":
        return cls(frozenset(cylinders))

    @classmethod
    def bit_equals(cls, n: int, bit: int) -> "ClopenCode":
        """The clopen set of points whose n-th bit equals ``bit``."""
        if n < 0 or bit not in (0, 1):
            raise ValueError(f"no bit {bit!r} at position {n}")
        return cls(frozenset({ANY_BIT * n + str(bit)}))

    @property
    def is_empty(self) -> bool:
        return not self.cylinders

    @property
    def is_full(self) -> bool:
        return "" in self.cylinders

    @property
    def depth(self) -> int:
        return max((len(c) for c in self.cylinders), default=0)

    def contains(self, x: Point) -> bool:
        window = x.bits(self.depth)
        return any(_covers(cyl, window) for cyl in self.cylinders)

    def complement(self) -> "ClopenCode":
        # the result never carries wildcards
        return ClopenCode(frozenset(_complement(self.cylinders, "")))

    def same_set(self, other: "ClopenCode") -> bool:
        # complements come out in a canonical shape, so compare those
        return self.complement().cylinders == other.complement().cylinders

    def sorted_cylinders(self):
        return sorted(self.cylinders, key=lambda c: (len(c), c))

    def __str__(self):
        if self.is_full:
            return "full"
        if self.is_empty:
            return "empty"
        return "{" + ", ".join(f"[{c}]" for c in self.sorted_cylinders()) + "}"


def clopen_member(x: Point, c: ClopenCode) -> bool:
    return c.contains(x)
