# src/utils/stagecraft.py
"""Constructions that proceed stage by stage over a StageRegistry.

Nothing here looks at an object beyond its registered (stage, index) pair:
comparisons, anchors and enumeration orders all come from the registry.
"""
import logging
from dataclasses import dataclass
from itertools import count, product
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from src.models.fin_graph import Edge, FinGraph, Vertex, edge_key
from src.models.ordinal import Comparison
from src.models.point import Point
from src.utils.errors import WorkbenchError
from src.utils.graph_algorithms import (Matching, NotBipartite, OddCycle, leftmost_perfect_matching, two_color,
                                        vizing_color)
from src.utils.stage_registry import StageRegistry

logger = logging.getLogger(__name__)


class WrongLength(WorkbenchError):
    pass


class InvalidColorPair(WorkbenchError):
    pass


def wellorder_compare(r: StageRegistry, x: str, y: str) -> Comparison:
    ox, oy = r.lookup(x), r.lookup(y)
    if ox < oy:
        return Comparison.LESS
    if ox > oy:
        return Comparison.GREATER
    return Comparison.EQUAL


# --- Hat game ---

@dataclass(frozen=True)
class HatOutcome:
    guesses: Tuple[int, ...]
    wrong: Tuple[int, ...]

    @property
    def errors(self) -> int:
        return len(self.wrong)


def _reference_bit(view: Point, offset: int, n: int) -> int:
    # the purely periodic point that agrees with `view` (which starts at `offset`) on a tail
    return int(view.period[(n - offset - len(view.prefix)) % len(view.period)])


def hat_strategy(hats: Point, n_prisoners: int) -> HatOutcome:
    """Play the parity strategy for prisoners 0 .. n_prisoners - 1.

    Prisoner i only uses ``hats.shift(i + 1)`` and the guesses already called out.
    """
    guesses: List[int] = []
    for i in range(n_prisoners):
        view = hats.shift(i + 1)
        horizon = i + 1 + len(view.prefix)
        ahead = sum(view.bit(j - i - 1) != _reference_bit(view, i + 1, j) for j in range(i + 1, horizon))
        if i == 0:
            guesses.append(ahead % 2)
            continue
        heard = sum(guesses[j] != _reference_bit(view, i + 1, j) for j in range(1, i))
        mismatch = (guesses[0] - heard - ahead) % 2
        guesses.append(_reference_bit(view, i + 1, i) ^ mismatch)
    wrong = tuple(i for i, guess in enumerate(guesses) if guess != hats.bit(i))
    logger.info("hats %s: %d prisoners, %d wrong", hats, n_prisoners, len(wrong))
    return HatOutcome(tuple(guesses), wrong)


# --- Gadgets ---

@dataclass(frozen=True)
class VertexGadget:
    fragment: FinGraph
    challenge: Dict[Vertex, int]
    extendable: bool


@dataclass(frozen=True)
class EdgeGadget:
    fragment: FinGraph
    challenge: Dict[Edge, int]
    category: Tuple[int, int]
    centers: Tuple[Vertex, ...]
    hub: Vertex
    extendable: bool


def _fresh_supply(taken) -> Iterator[str]:
    return (name for name in (f"fresh{i}" for i in count()) if name not in taken)


def two_coloring_extends(fragment: FinGraph, challenge: Dict[Vertex, int]) -> bool:
    """Whether some proper 2-coloring of ``fragment`` agrees with ``challenge``."""
    free = [v for v in fragment.vertices if v not in challenge]
    for bits in product((0, 1), repeat=len(free)):
        coloring = {**challenge, **dict(zip(free, bits))}
        if all(coloring[u] != coloring[v] for u, v in fragment.edges):
            return True
    return False


def edge_coloring_extends(fragment: FinGraph, challenge: Dict[Edge, int], palette: int) -> bool:
    """Whether some proper edge coloring with ``palette`` colors agrees with ``challenge``."""
    free = [e for e in fragment.edges if e not in challenge]
    for choice in product(range(palette), repeat=len(free)):
        colors = {**challenge, **dict(zip(free, choice))}
        if all(len({colors[edge_key(v, w)] for w in fragment.neighbors(v)}) == fragment.degree(v)
               for v in fragment.vertices):
            return True
    return False


def wo_gadget(colors: Tuple[int, int], endpoints: Tuple[Vertex, Vertex],
              fresh: Optional[Iterator[Vertex]] = None) -> VertexGadget:
    """Join the two endpoints by a path whose parity contradicts the challenged colors."""
    u, v = endpoints
    fresh = fresh if fresh is not None else _fresh_supply({u, v})
    inner = [next(fresh) for _ in range(2 if colors[0] == colors[1] else 1)]
    path = [u, *inner, v]
    fragment = FinGraph(path, zip(path, path[1:]))
    challenge = {u: colors[0], v: colors[1]}
    return VertexGadget(fragment, challenge, two_coloring_extends(fragment, challenge))


def edge1_length(k: int) -> int:
    return comb(k + 1, 2) * (k - 1) + 1


def edge1_gadget(k: int, path_colors: Sequence[Sequence[int]]) -> EdgeGadget:
    """Attach k same-colored paths of length two to one fresh vertex.

    Path i is ``v{i} - c{i} - w{i}``; its two edges take the entries of ``path_colors[i]``.
    """
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    n = edge1_length(k)
    if len(path_colors) != n:
        raise WrongLength(f"expected {n} color pairs for k={k}, got {len(path_colors)}")
    pairs = []
    for i, pair in enumerate(path_colors):
        pair = tuple(pair)
        if len(pair) != 2 or pair[0] == pair[1] or not all(0 <= c <= k for c in pair):
            raise InvalidColorPair(f"path {i}: {pair!r} is not two distinct colors from 0..{k}")
        pairs.append(tuple(sorted(pair)))

    vertices, edges, challenge = [], [], {}
    for i, (a, b) in enumerate(pairs):
        v, c, w = f"v{i}", f"c{i}", f"w{i}"
        vertices += [v, c, w]
        edges += [(v, c), (c, w)]
        challenge[edge_key(v, c)] = a
        challenge[edge_key(c, w)] = b

    category = next(cat for cat in sorted(set(pairs)) if pairs.count(cat) >= k)
    centers = tuple(f"c{i}" for i, pair in enumerate(pairs) if pair == category)[:k]
    hub = "x"
    fragment = FinGraph(vertices + [hub], edges + [(c, hub) for c in centers])
    logger.debug("edge1 gadget: category %s, centers %s", category, centers)
    return EdgeGadget(fragment, challenge, category, centers, hub,
                      edge_coloring_extends(fragment, challenge, k + 1))


# --- Stage-ordered graph constructions ---

def _order(r: StageRegistry):
    return lambda v: r.lookup(str(v))


def component_anchor(component: Sequence[Vertex], r: StageRegistry) -> Vertex:
    return min(component, key=_order(r))


def stage_two_coloring(g: FinGraph, r: StageRegistry) -> Dict[Vertex, int]:
    """Color every component by distance parity to its registry-least vertex."""
    anchors = [component_anchor(component, r) for component in g.components()]
    result = two_color(g, roots=anchors)
    if isinstance(result, OddCycle):
        raise NotBipartite(result.cycle)
    return result


def stage_perfect_matching(g: FinGraph, r: StageRegistry) -> Matching:
    """Union over components of the leftmost perfect matching, pairs ordered by the registry."""
    chosen: FrozenSet[Edge] = frozenset()
    for component in g.components():
        chosen |= leftmost_perfect_matching(g.subgraph(component), key=_order(r))
    return chosen


def stage_edge_coloring(g: FinGraph, r: StageRegistry) -> Dict[Edge, int]:
    order = _order(r)
    return vizing_color(g, order=lambda e: sorted((order(e[0]), order(e[1]))))
