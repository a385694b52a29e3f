# src/utils/file_formats.py
"""Line-oriented readers and writers for graphs, structures, witnesses and colorings.

Records are whitespace separated; blank lines and lines starting with ``#`` are skipped.
"""
import csv
import io
from typing import Dict, Iterable, List, Sequence, Tuple

from src.models.borel_code import format_address
from src.models.fin_graph import Edge, FinGraph, Vertex, vertex_key
from src.models.fin_structure import FinStructure
from src.utils.errors import ParseError


class FormatError(ParseError):
    pass


def _records(text: str):
    lines = io.StringIO(text)
    reader = csv.reader(lines, delimiter=" ", skipinitialspace=True)
    for row in reader:
        row = [cell for cell in row if cell]
        if row and not row[0].startswith("#"):
            yield reader.line_num, row


def _write(rows: Iterable[Sequence]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, delimiter=" ", lineterminator="\n")
    writer.writerows(rows)
    return out.getvalue()


def _vertex(token: str) -> Vertex:
    return int(token) if token.isdigit() else token


def read_graph(text: str) -> FinGraph:
    """``v name [side]`` declares a vertex, ``e u w`` an edge; endpoints need no declaration."""
    vertices: List[Vertex] = []
    edges: List[Edge] = []
    sides: Dict[Vertex, int] = {}
    for line, row in _records(text):
        if row[0] == "v" and len(row) in (2, 3):
            vertices.append(_vertex(row[1]))
            if len(row) == 3:
                if row[2] not in ("0", "1"):
                    raise FormatError(f"side must be 0 or 1, not {row[2]!r}", line, 1)
                sides[_vertex(row[1])] = int(row[2])
        elif row[0] == "e" and len(row) == 3:
            edges.append((_vertex(row[1]), _vertex(row[2])))
        else:
            raise FormatError(f"expected 'v name [side]' or 'e u w', found {' '.join(row)!r}", line, 1)
    vertices += [v for e in edges for v in e]
    try:
        return FinGraph(vertices, edges, sides if sides else None)
    except ValueError as exc:
        raise FormatError(str(exc), 1, 1) from None


def write_graph(g: FinGraph) -> str:
    rows = []
    for v in g.vertices:
        rows.append(["v", v] if g.sides is None else ["v", v, g.sides[v]])
    rows += [["e", u, w] for u, w in g.edges]
    return _write(rows)


def read_structure(text: str) -> FinStructure:
    """``elem label`` lines in element order, then ``in a b`` for a member of b."""
    labels: List[str] = []
    pairs = set()
    for line, row in _records(text):
        if row[0] == "elem" and len(row) == 2:
            if row[1] in labels:
                raise FormatError(f"element {row[1]!r} declared twice", line, 1)
            labels.append(row[1])
        elif row[0] == "in" and len(row) == 3:
            for name in row[1:]:
                if name not in labels:
                    raise FormatError(f"unknown element {name!r}", line, 1)
            pairs.add((labels.index(row[1]), labels.index(row[2])))
        else:
            raise FormatError(f"expected 'elem label' or 'in a b', found {' '.join(row)!r}", line, 1)
    return FinStructure(len(labels), frozenset(pairs), tuple(labels))


def write_structure(s: FinStructure) -> str:
    rows = [["elem", s.name(e)] for e in s.domain]
    rows += [["in", s.name(a), s.name(b)] for a, b in sorted(s.membership)]
    return _write(rows)


def write_witness(witness: Dict[tuple, int]) -> str:
    return _write([format_address(address), bit] for address, bit in sorted(witness.items()))


def write_edge_coloring(colors: Dict[Edge, int]) -> str:
    ordered = sorted(colors.items(), key=lambda item: (vertex_key(item[0][0]), vertex_key(item[0][1])))
    return _write([u, w, c] for (u, w), c in ordered)


def write_matching(matching: Iterable[Edge]) -> str:
    return _write(sorted(matching, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))))


def read_color_pairs(text: str) -> List[Tuple[int, int]]:
    """``0-1,0-2,...`` as a list of pairs."""
    pairs = []
    for position, entry in enumerate(e for e in text.split(",") if e.strip()):
        left, sep, right = entry.strip().partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            raise FormatError(f"color pair {position} must look like 'a-b', found {entry.strip()!r}", 1, 1)
        pairs.append((int(left), int(right)))
    return pairs
