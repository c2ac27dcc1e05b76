"""Text formats for graphs and tree decompositions.

Graphs (.gr): '#' comments, a header line "p N M", then M lines "e u v"
with 1-based vertex ids.  Tree decompositions (.td): '#' comments, a header
"s td B n", B bag lines "b <id> <v...>" (1-based bag and vertex ids), then
B-1 tree edge lines "t <parent> <child>"; bag 1 is the root.
"""

from __future__ import annotations

from .decomposition import TreeDecomposition
from .graph import Graph


class FormatError(ValueError):
    def __init__(self, message, source="<input>", line=None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text: str, source: str = "<input>") -> Graph:
    n = m = None
    edges = []
    for lineno, fields in _content_lines(text):
        if fields[0] == "p":
            if n is not None:
                raise FormatError("duplicate header", source, lineno)
            if len(fields) != 3:
                raise FormatError("header must be 'p N M'", source, lineno)
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError("header counts must be integers", source, lineno)
            if n < 0 or m < 0:
                raise FormatError("header counts must be nonnegative", source, lineno)
        elif fields[0] == "e":
            if n is None:
                raise FormatError("edge before header", source, lineno)
            if len(fields) != 3:
                raise FormatError("edge line must be 'e u v'", source, lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError("edge endpoints must be integers", source, lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"edge ({u}, {v}) out of range", source, lineno)
            if u == v:
                raise FormatError(f"self-loop at {u}", source, lineno)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line kind {fields[0]!r}", source, lineno)
    if n is None:
        raise FormatError("missing 'p N M' header", source)
    if m is not None and m != len(edges):
        raise FormatError(f"header announces {m} edges, found {len(edges)}", source)
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str, source: str = "<input>") -> TreeDecomposition:
    count = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for lineno, fields in _content_lines(text):
        if fields[0] == "s":
            if count is not None:
                raise FormatError("duplicate header", source, lineno)
            if len(fields) != 4 or fields[1] != "td":
                raise FormatError("header must be 's td B n'", source, lineno)
            count = int(fields[2])
        elif fields[0] == "b":
            if len(fields) < 2:
                raise FormatError("bag line must be 'b <id> <v...>'", source, lineno)
            idx = int(fields[1])
            if idx in bags:
                raise FormatError(f"duplicate bag {idx}", source, lineno)
            bags[idx] = frozenset(int(f) - 1 for f in fields[2:])
        elif fields[0] == "t":
            if len(fields) != 3:
                raise FormatError("tree line must be 't parent child'", source, lineno)
            tree_edges.append((int(fields[1]), int(fields[2])))
        else:
            raise FormatError(f"unknown line kind {fields[0]!r}", source, lineno)
    if count is None:
        raise FormatError("missing 's td B n' header", source)
    if sorted(bags) != list(range(1, count + 1)):
        raise FormatError(f"expected bags 1..{count}", source)
    parent: list = [None] * count
    seen_child = set()
    for p, c in tree_edges:
        for x in (p, c):
            if not (1 <= x <= count):
                raise FormatError(f"tree edge references unknown bag {x}", source)
        if c - 1 in seen_child or c == 1:
            raise FormatError(f"bag {c} has two parents or is the root", source)
        seen_child.add(c - 1)
        parent[c - 1] = p - 1
    if len(tree_edges) != count - 1:
        raise FormatError(
            f"expected {count - 1} tree edges, found {len(tree_edges)}", source
        )
    return TreeDecomposition(
        tuple(parent), tuple(bags[i] for i in range(1, count + 1))
    )


def format_tree_decomposition(td: TreeDecomposition) -> str:
    n_vertices = len({v for bag in td.bags for v in bag})
    lines = [f"s td {td.node_count} {n_vertices}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in sorted(bag)]))
    for c, p in enumerate(td.parent, start=1):
        if p is not None:
            lines.append(f"t {p + 1} {c}")
    return "\n".join(lines) + "\n"
