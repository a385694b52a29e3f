# src/utils/graph_algorithms.py
"""Bipartite colorings, matchings and edge colorings on finite graphs."""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

import networkx as nx

from src.models.fin_graph import Edge, FinGraph, Vertex, edge_key, vertex_key
from src.utils.errors import WorkbenchError

logger = logging.getLogger(__name__)

T = TypeVar("T")
Matching = FrozenSet[Edge]


class DegreeTooHigh(WorkbenchError):
    pass


class NotBipartite(WorkbenchError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"odd cycle {' - '.join(map(str, self.cycle))}")


class EmptyCandidates(WorkbenchError):
    pass


@dataclass(frozen=True)
class OddCycle:
    cycle: Tuple[Vertex, ...]


@dataclass(frozen=True)
class NoMatching:
    violator: FrozenSet[Vertex]


def two_color(g: FinGraph, roots: Optional[Sequence[Vertex]] = None) -> Union[Dict[Vertex, int], OddCycle]:
    """Color each component by BFS parity from its first root, or return an odd cycle.

    Roots default to the vertices in canonical order, so each component starts at its least vertex.
    """
    color: Dict[Vertex, int] = {}
    parent: Dict[Vertex, Optional[Vertex]] = {}
    for root in list(roots or ()) + g.vertices:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return OddCycle(_close_cycle(parent, u, w))
    return color


def _close_cycle(parent, u, w):
    up_u = [u]
    while parent[up_u[-1]] is not None:
        up_u.append(parent[up_u[-1]])
    on_u = {v: i for i, v in enumerate(up_u)}
    up_w = [w]
    while up_w[-1] not in on_u:
        up_w.append(parent[up_w[-1]])
    meet = up_w[-1]
    return tuple(up_u[:on_u[meet] + 1]) + tuple(reversed(up_w[:-1]))


def is_proper_two_coloring(g: FinGraph, coloring: Dict[Vertex, int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges) and set(coloring) == set(g.vertices)


def bipartition(g: FinGraph) -> Dict[Vertex, int]:
    if g.sides is not None:
        return dict(g.sides)
    result = two_color(g)
    if isinstance(result, OddCycle):
        raise NotBipartite(result.cycle)
    return result


def _fresh(taken, prefix, count):
    names = []
    i = 0
    while len(names) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            names.append(name)
        i += 1
    taken.update(names)
    return names


def embed_into_regular(g: FinGraph, d: int) -> FinGraph:
    """A d-regular bipartite graph containing ``g`` as an induced subgraph."""
    sides = bipartition(g)
    for v in g.vertices:
        if g.degree(v) > d:
            raise DegreeTooHigh(f"vertex {v!r} has degree {g.degree(v)} > {d}")
    if g.is_regular(d):
        return g

    taken = set(g.vertices)
    a0 = [v for v in g.vertices if sides[v] == 0]
    b0 = [v for v in g.vertices if sides[v] == 1]
    if len(a0) < len(b0):
        a0 += _fresh(taken, "pad_a", len(b0) - len(a0))
    elif len(b0) < len(a0):
        b0 += _fresh(taken, "pad_b", len(a0) - len(b0))
    degree = {v: (g.degree(v) if v in g.graph else 0) for v in a0 + b0}

    missing = d * len(a0) - len(g.edges)
    k = max(missing, d)
    leftover = k - missing
    a1 = _fresh(taken, "fresh_a", k)
    b1 = _fresh(taken, "fresh_b", k)
    edges = list(g.edges)

    slots = iter(b1[leftover:])
    for v in a0:
        edges.extend((v, next(slots)) for _ in range(d - degree[v]))
    slots = iter(a1[leftover:])
    for v in b0:
        edges.extend((next(slots), v) for _ in range(d - degree[v]))
    edges.extend((a1[i], b1[i]) for i in range(leftover))
    # circulant completion between the fresh sides; shift 0 is already used
    for shift in range(1, d):
        edges.extend((a1[i], b1[(i + shift) % k]) for i in range(k))

    out_sides = {v: 0 for v in a0 + a1}
    out_sides.update({v: 1 for v in b0 + b1})
    result = FinGraph(list(out_sides), edges, out_sides)
    logger.debug("embedded %r into %r (k=%d, leftover=%d)", g, result, k, leftover)
    return result


def perfect_matching(g: FinGraph) -> Union[Matching, NoMatching]:
    """A perfect matching found by Hopcroft-Karp, or a set of vertices violating Hall's condition."""
    sides = bipartition(g)
    top = [v for v in g.vertices if sides[v] == 0]
    mate = nx.bipartite.hopcroft_karp_matching(g.graph, top_nodes=top)
    matching = frozenset(edge_key(u, mate[u]) for u in top if u in mate)
    if 2 * len(matching) == len(g):
        return matching
    unmatched_top = [v for v in top if v not in mate]
    side = 0 if unmatched_top else 1
    start = unmatched_top or [v for v in g.vertices if sides[v] == 1 and v not in mate]
    reached = set(start)
    queue = deque(start)
    while queue:
        u = queue.popleft()
        if sides[u] == side:
            step = [w for w in g.neighbors(u) if mate.get(u) != w]
        else:
            step = [mate[u]] if u in mate else []
        for w in step:
            if w not in reached:
                reached.add(w)
                queue.append(w)
    return NoMatching(frozenset(v for v in reached if sides[v] == side))


def is_matching(edges: Iterable[Edge]) -> bool:
    seen = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def is_induced_subgraph(small: FinGraph, big: FinGraph) -> bool:
    if not set(small.vertices) <= set(big.vertices):
        return False
    return big.subgraph(small.vertices).edges == small.edges


def partial_matching_degree_d(g: FinGraph, d: int) -> Matching:
    """Edges touching every vertex at most once and every degree-d vertex exactly once."""
    if not g.edges:
        return frozenset()
    big = embed_into_regular(g, d)
    matching = perfect_matching(big)
    if isinstance(matching, NoMatching):
        raise AssertionError("a regular bipartite graph always has a perfect matching")
    return frozenset(e for e in matching if g.has_edge(*e))


def _free_color(colors, g, v, palette):
    used = {colors.get(edge_key(v, w)) for w in g.neighbors(v)}
    return next(c for c in range(palette) if c not in used)


def _is_free(colors, g, v, c):
    return all(colors.get(edge_key(v, w)) != c for w in g.neighbors(v))


def vizing_color(g: FinGraph, order: Optional[Callable[[Edge], object]] = None) -> Dict[Edge, int]:
    """Proper edge coloring with at most max-degree + 1 colors (fans and cd-path inversion)."""
    palette = g.max_degree + 1
    colors: Dict[Edge, int] = {}
    for u, v in (sorted(g.edges, key=order) if order else g.edges):
        fan = [v]
        while True:
            last = fan[-1]
            extension = next(
                (w for w in g.neighbors(u)
                 if w not in fan and edge_key(u, w) in colors and _is_free(colors, g, last, colors[edge_key(u, w)])),
                None,
            )
            if extension is None:
                break
            fan.append(extension)
        c = _free_color(colors, g, u, palette)
        d = _free_color(colors, g, fan[-1], palette)

        # invert the path from u whose edges alternate d, c
        path = []
        current, follow = u, d
        while True:
            step = next((w for w in g.neighbors(current)
                         if colors.get(edge_key(current, w)) == follow and edge_key(current, w) not in path), None)
            if step is None:
                break
            path.append(edge_key(current, step))
            current, follow = step, (c if follow == d else d)
        for e in path:
            colors[e] = c if colors[e] == d else d

        for i, w in enumerate(fan):
            prefix_is_fan = all(
                _is_free(colors, g, fan[j - 1], colors[edge_key(u, fan[j])]) for j in range(1, i + 1)
            )
            if prefix_is_fan and _is_free(colors, g, w, d):
                for j in range(i):
                    colors[edge_key(u, fan[j])] = colors[edge_key(u, fan[j + 1])]
                colors[edge_key(u, w)] = d
                break
        else:
            raise AssertionError(f"no rotatable fan prefix at {u!r}")
    return colors


def is_proper_edge_coloring(g: FinGraph, colors: Dict[Edge, int]) -> bool:
    if set(colors) != set(g.edges):
        return False
    for v in g.vertices:
        seen = [colors[edge_key(v, w)] for w in g.neighbors(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


def konig_color(g: FinGraph) -> Dict[Edge, int]:
    """Proper edge coloring of a bipartite graph with max-degree colors, one perfect matching per color."""
    delta = g.max_degree
    bipartition(g)
    if delta == 0:
        return {}
    big = embed_into_regular(g, delta)
    colors: Dict[Edge, int] = {}
    for color in range(delta):
        matching = perfect_matching(big)
        if isinstance(matching, NoMatching):
            raise AssertionError("a regular bipartite graph always has a perfect matching")
        for e in matching:
            if g.has_edge(*e):
                colors[e] = color
        big = big.without_edges(matching)
    return colors


def edge_universe(vertices: Sequence[Vertex], key: Callable[[Vertex], object] = vertex_key) -> List[Edge]:
    ordered = sorted(vertices, key=key)
    return [edge_key(ordered[i], ordered[j]) for i in range(len(ordered)) for j in range(i + 1, len(ordered))]


def edge_set_encoder(g: FinGraph, key: Callable[[Vertex], object] = vertex_key) -> Callable[[Iterable[Edge]], str]:
    """Encode an edge set as a bit string over the pairs of ``g``'s vertices, sorted by ``key``."""
    universe = edge_universe(g.vertices, key)

    def encode(edges: Iterable[Edge]) -> str:
        chosen = {edge_key(u, v) for u, v in edges}
        return "".join("1" if e in chosen else "0" for e in universe)

    return encode


def leftmost(candidates: Sequence[T], key: Callable[[T], str]) -> T:
    candidates = list(candidates)
    if not candidates:
        raise EmptyCandidates("nothing to choose from")
    encoded = [key(c) for c in candidates]
    best = min(range(len(candidates)), key=lambda i: encoded[i])
    if any(encoded[i] == encoded[best] and candidates[i] != candidates[best] for i in range(len(candidates))):
        raise ValueError("the encoding identifies distinct candidates")
    return candidates[best]


def perfect_matchings(g: FinGraph) -> List[Matching]:
    """Every perfect matching of ``g``, by backtracking on the least uncovered vertex."""
    found = []

    def extend(covered, chosen):
        free = next((v for v in g.vertices if v not in covered), None)
        if free is None:
            found.append(frozenset(chosen))
            return
        for w in g.neighbors(free):
            if w not in covered:
                chosen.append(edge_key(free, w))
                extend(covered | {free, w}, chosen)
                chosen.pop()

    extend(frozenset(), [])
    return found


def leftmost_perfect_matching(g: FinGraph, key: Callable[[Vertex], object] = vertex_key) -> Matching:
    return leftmost(perfect_matchings(g), edge_set_encoder(g, key))
