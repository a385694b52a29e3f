# src/utils/ramsey.py
"""Two-block coarsenings of partitions and the stage-by-stage coloring that defeats them."""
import logging
from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.models.fin_partition import Cycle, FinPartition, Fresh, MonotoneMap
from src.utils.constants import COARSENING_BUDGET, MODIFICATION_SEARCH_LIMIT
from src.utils.errors import WorkbenchError
from src.utils.stage_registry import StageRegistry

logger = logging.getLogger(__name__)


class EmptyBlock(WorkbenchError):
    pass


class NotInfinite(WorkbenchError):
    pass


class SearchExhausted(WorkbenchError):
    pass


def _relabel(p: FinPartition, label: Callable[[int], object], settle: int, period: int) -> Optional[FinPartition]:
    """The partition whose blocks are the label classes of p's blocks, or None if there is one class.

    For infinite p, ``label`` must repeat with ``period`` on block indices from ``settle`` on.
    """
    if isinstance(p.rule, Cycle):
        table = [label(b) for b in p.table]
        pattern = [label(b) for b in p.rule.pattern]
    else:
        start = max(settle, p.rule.base)
        first = p.cutoff + (start - p.rule.base) * p.rule.width
        table = [label(p.block_of(n)) for n in range(first)]
        pattern = [label(p.block_of(n)) for n in range(first, first + period * p.rule.width)]
    if len(set(table) | set(pattern)) < 2:
        return None
    return FinPartition.from_labels(table, pattern)


def finite_modification(p: FinPartition, f: MonotoneMap, n: int) -> FinPartition:
    """Split p into the union of the blocks f(i) for i >= n and everything else."""
    if not p.is_infinite:
        raise NotInfinite(f"{p} has only {p.block_count} blocks")
    if n < 0:
        raise ValueError("n must be a natural number")
    start = max(n, len(f.table))
    settle = f(start)

    def chosen(j):
        if j >= settle:
            return (j - f.offset) % f.slope == 0
        return any(f(i) == j for i in range(n, j + 1))

    q = _relabel(p, chosen, settle, f.slope)
    if q is None:
        raise EmptyBlock(f"{f} hits every block of {p} from {n} on")
    return q


def coarsen_f(p: FinPartition, f: MonotoneMap) -> FinPartition:
    return finite_modification(p, f, 0)


def coarsenings_2(p: FinPartition, budget: int = COARSENING_BUDGET) -> List[Tuple[str, FinPartition]]:
    """Two-block coarsenings of p, each with the block labelling that produced it.

    A finite p gets every labelling of its blocks. An infinite p gets the
    labellings written as a prefix of at most ``budget`` bits followed by a
    repeating period of 1 .. ``budget`` bits, shown as ``prefix(period)``.
    """
    found: Dict[FinPartition, str] = {}

    def offer(description, q):
        if q is not None and q not in found:
            found[q] = description

    if not p.is_infinite:
        for bits in product("01", repeat=p.block_count - 1):
            labels = "0" + "".join(bits)
            offer(labels, _relabel(p, lambda b: labels[b], 0, 1))
    else:
        for size in range(budget + 1):
            for length in range(1, budget + 1):
                for head in product("01", repeat=size):
                    for cycle in product("01", repeat=length):
                        prefix, period = "".join(head), "".join(cycle)

                        def label(j, prefix=prefix, period=period):
                            return prefix[j] if j < len(prefix) else period[(j - len(prefix)) % len(period)]

                        offer(f"{prefix}({period})", _relabel(p, label, size, length))
    return [(description, q) for q, description in found.items()]


def is_coarsening(q: FinPartition, p: FinPartition) -> bool:
    """Whether every block of p lies inside a single block of q."""
    window = max(p.cutoff, q.cutoff) + 2 * lcm(p.period, q.period) + p.period
    seen: Dict[int, int] = {}
    for n in range(window):
        if seen.setdefault(p.block_of(n), q.block_of(n)) != q.block_of(n):
            return False
    return True


def dominating_map(previous: Sequence[MonotoneMap]) -> MonotoneMap:
    """A linear map eventually above every map in ``previous``; 2i when there are none."""
    if not previous:
        return MonotoneMap.linear(2, 0)
    return MonotoneMap.linear(max(f.slope for f in previous), max(f.offset for f in previous) + 1)


# --- Adversary ---

@dataclass(frozen=True)
class AdversaryChoice:
    partition_id: str
    stage: int
    index: int
    f: MonotoneMap
    first: Tuple[int, FinPartition]
    second: Tuple[int, FinPartition]


@dataclass(frozen=True)
class AdversaryColoring:
    zero: FrozenSet[FinPartition]

    def color(self, q: FinPartition) -> int:
        return 0 if q in self.zero else 1


@dataclass(frozen=True)
class AdversaryReport:
    choices: Tuple[AdversaryChoice, ...]
    coloring: AdversaryColoring

    @property
    def monochromatic(self) -> List[str]:
        return [c.partition_id for c in self.choices
                if self.coloring.color(c.first[1]) == self.coloring.color(c.second[1])]


def adversary_coloring(r: StageRegistry, ps: Sequence[Tuple[str, FinPartition]],
                       search_limit: int = MODIFICATION_SEARCH_LIMIT) -> AdversaryReport:
    """Give every registered p two fresh finite modifications, colored 0 and 1.

    Partitions are handled in registry order; p at stage s uses the map
    chosen for s, which dominates the maps of all earlier stages.
    """
    maps: List[MonotoneMap] = []
    used = set()
    choices = []
    for p_id, p in sorted(ps, key=lambda item: r.lookup(item[0])):
        stage, index = r.lookup(p_id)
        while len(maps) <= stage:
            maps.append(dominating_map(maps))
        f = maps[stage]
        picked = []
        for n in range(search_limit):
            q = finite_modification(p, f, n)
            if q in used:
                continue
            used.add(q)
            picked.append((n, q))
            if len(picked) == 2:
                break
        else:
            raise SearchExhausted(f"fewer than two fresh modifications of {p_id!r} below n={search_limit}")
        for color, (n, q) in enumerate(picked):
            q_id = f"{p_id}/q{color}"
            r.register(q_id, stage=stage)
            r.note("COLOR", "Partition", q_id, f"Modification n={n} of '{p_id}' colored {color}.")
        logger.debug("%s at (%d, %d): f=%s, n=%d and n=%d", p_id, stage, index, f, picked[0][0], picked[1][0])
        choices.append(AdversaryChoice(p_id, stage, index, f, picked[0], picked[1]))
    coloring = AdversaryColoring(frozenset(c.first[1] for c in choices))
    report = AdversaryReport(tuple(choices), coloring)
    logger.info("colored %d partitions, %d monochromatic", len(choices), len(report.monochromatic))
    return report


def sample_partitions(count: int) -> List[FinPartition]:
    """Infinite partitions with one leading block of 2.. elements, then fresh runs of width 1..3."""
    return [FinPartition((0,) * (j // 3 + 2), Fresh(1, j % 3 + 1)) for j in range(count)]


def stage_partitions(r: StageRegistry, partitions: Sequence[FinPartition],
                     stages: int) -> List[Tuple[str, FinPartition]]:
    """Register p0, p1, ... spread evenly over stages 0 .. stages - 1."""
    registered = []
    for j, p in enumerate(partitions):
        stage = j * stages // len(partitions)
        while r.stage < stage:
            r.advance_stage()
        p_id = f"p{j}"
        r.register(p_id)
        registered.append((p_id, p))
    return registered
