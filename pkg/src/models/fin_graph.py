# src/models/fin_graph.py
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

import networkx as nx

Vertex = Hashable
Edge = Tuple[Vertex, Vertex]


def vertex_key(v: Vertex):
    """Sort key putting integers first, then strings, then everything else."""
    if isinstance(v, bool):
        return (2, repr(v))
    if isinstance(v, int):
        return (0, v, "")
    if isinstance(v, str):
        return (1, 0, v)
    return (2, repr(v))


def edge_key(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if vertex_key(u) <= vertex_key(v) else (v, u)


class FinGraph:
    """A finite simple graph with an optional recorded bipartition.

    Vertices and edges are always reported in a canonical order so every
    algorithm built on top is deterministic.
    """

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = (),
                 sides: Optional[Dict[Vertex, int]] = None):
        self.graph = nx.Graph()
        self.graph.add_nodes_from(sorted(set(vertices), key=vertex_key))
        for u, v in sorted((edge_key(u, v) for u, v in edges), key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            self.graph.add_edge(u, v)
        self.sides = dict(sides) if sides is not None else None
        if self.sides is not None:
            for v in self.graph.nodes:
                if self.sides.get(v) not in (0, 1):
                    raise ValueError(f"vertex {v!r} has no side")
            for u, v in self.graph.edges:
                if self.sides[u] == self.sides[v]:
                    raise ValueError(f"edge {u!r}-{v!r} joins two vertices on side {self.sides[u]}")

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "FinGraph":
        return cls(graph.nodes, graph.edges)

    @property
    def vertices(self) -> List[Vertex]:
        return sorted(self.graph.nodes, key=vertex_key)

    @property
    def edges(self) -> List[Edge]:
        return sorted((edge_key(u, v) for u, v in self.graph.edges),
                      key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return self.graph.has_edge(u, v)

    def neighbors(self, v: Vertex) -> List[Vertex]:
        return sorted(self.graph.neighbors(v), key=vertex_key)

    def degree(self, v: Vertex) -> int:
        return self.graph.degree(v)

    @property
    def max_degree(self) -> int:
        return max((d for _, d in self.graph.degree), default=0)

    def is_regular(self, d: int) -> bool:
        return all(deg == d for _, deg in self.graph.degree)

    def components(self) -> List[List[Vertex]]:
        parts = [sorted(c, key=vertex_key) for c in nx.connected_components(self.graph)]
        return sorted(parts, key=lambda part: vertex_key(part[0]))

    def subgraph(self, vertices: Iterable[Vertex]) -> "FinGraph":
        keep = set(vertices)
        sides = {v: s for v, s in self.sides.items() if v in keep} if self.sides is not None else None
        return FinGraph(keep, [e for e in self.edges if e[0] in keep and e[1] in keep], sides)

    def without_edges(self, removed: Iterable[Edge]) -> "FinGraph":
        gone = {edge_key(u, v) for u, v in removed}
        return FinGraph(self.vertices, [e for e in self.edges if e not in gone], self.sides)

    def __len__(self):
        return self.graph.number_of_nodes()

    def __eq__(self, other):
        if not isinstance(other, FinGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self):
        return f"FinGraph({len(self)} vertices, {self.graph.number_of_edges()} edges)"
