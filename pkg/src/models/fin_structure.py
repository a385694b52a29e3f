# src/models/fin_structure.py
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from src.utils.errors import WorkbenchError


class NotExtensional(WorkbenchError):
    pass


class NotWellFounded(WorkbenchError):
    pass


@dataclass(frozen=True)
class FinStructure:
    """A finite membership structure.

    Elements are the integers ``0 .. size-1`` in canonical order; ``membership``
    holds pairs ``(a, b)`` meaning ``a`` is a member of ``b``. The relation
    must be extensional and free of membership cycles.
    """

    size: int = 0
    membership: FrozenSet[Tuple[int, int]] = frozenset()
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "membership", frozenset(self.membership))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.labels and len(self.labels) != self.size:
            raise ValueError("labels must name every element")
        for a, b in self.membership:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise ValueError(f"membership pair {(a, b)} mentions an unknown element")
        self._check_well_founded()
        self._check_extensional()

    @classmethod
    def empty(cls) -> "FinStructure":
        return cls()

    @property
    def domain(self) -> range:
        return range(self.size)

    def members(self, element: int) -> FrozenSet[int]:
        return frozenset(a for a, b in self.membership if b == element)

    def member_sets(self) -> Dict[FrozenSet[int], int]:
        return {self.members(e): e for e in self.domain}

    def name(self, element: int) -> str:
        return self.labels[element] if self.labels else f"e{element}"

    def find(self, name: str) -> Optional[int]:
        for e in self.domain:
            if self.name(e) == name:
                return e
        return None

    def extended(self, new_member_sets: Iterable[FrozenSet[int]], new_labels: Iterable[str] = ()) -> "FinStructure":
        """Append new elements, the i-th of which has members ``new_member_sets[i]``."""
        new_member_sets = list(new_member_sets)
        new_labels = list(new_labels)
        pairs = set(self.membership)
        for offset, members in enumerate(new_member_sets):
            pairs.update((a, self.size + offset) for a in members)
        labels = ()
        if self.labels or new_labels:
            labels = tuple(self.name(e) for e in self.domain) + tuple(new_labels)
        return FinStructure(self.size + len(new_member_sets), frozenset(pairs), labels)

    def is_initial_segment_of(self, other: "FinStructure") -> bool:
        if self.size > other.size:
            return False
        return all(self.members(e) == other.members(e) for e in self.domain)

    def _check_extensional(self):
        seen = {}
        for e in self.domain:
            members = self.members(e)
            if members in seen:
                raise NotExtensional(f"elements {self.name(seen[members])} and {self.name(e)} have the same members")
            seen[members] = e

    def _check_well_founded(self):
        remaining = {e: set(self.members(e)) for e in self.domain}
        while remaining:
            ready = [e for e, members in remaining.items() if not members]
            if not ready:
                raise NotWellFounded("membership relation has a cycle")
            for e in ready:
                del remaining[e]
            for members in remaining.values():
                members.difference_update(ready)
