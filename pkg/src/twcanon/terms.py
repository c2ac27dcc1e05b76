"""Construction terms: expressions that build labelled graphs.

A term is built from five operators: leaf (the empty graph), introduce_i
(add an isolated vertex labelled i), forget_i (drop label i), edge_{i,j}
(connect the vertices labelled i and j), and join (glue terms that agree on
their labelled, edge-free boundary).  Terms encode tree decompositions: a
graph has treewidth below k exactly when some term over k labels builds it.

Terms are immutable. Structural identity is NOT object equality; use
``compare`` or the cached serialization. Each node caches

* ``ser``  - the canonical S-expression, e.g. ``(f 1 (i 1 (leaf)))``;
* ``key``  - a byte string whose lexicographic order realizes the total
  term order: introduce operators come first (sorted by label), then
  forget, then edge (lexicographic by label pair), then leaf, then join,
  and arguments are compared recursively, join argument lists
  lexicographically with the proper-prefix-is-smaller rule.

The key encoding appends a terminator byte, smaller than every operator
byte, after join arguments; this makes encodings self-delimiting, so
byte-wise comparison agrees with the recursive order definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

LEAF = "leaf"
INTRODUCE = "i"
FORGET = "f"
EDGE = "e"
JOIN = "j"

_END = b"\x00"
_TOK = {INTRODUCE: b"\x01", FORGET: b"\x02", EDGE: b"\x03", LEAF: b"\x04", JOIN: b"\x05"}


class TermError(ValueError):
    """Malformed term construction or parse failure."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"offset {position}: {message}"
        super().__init__(message)


def _label_bytes(i):
    return i.to_bytes(4, "big")


class Term:
    """One operator node; children are themselves terms.

    ``used`` is the set of labels currently carried by the term and
    ``bag_edges`` the edges already materialized between them (as sorted
    label pairs).  Both are maintained by the constructor functions, which
    are the only supported way to build terms.
    """

    __slots__ = ("kind", "label", "label2", "children", "used", "bag_edges",
                 "length", "ser", "key")

    def __init__(self, kind, label, label2, children, used, bag_edges):
        self.kind = kind
        self.label = label
        self.label2 = label2
        self.children = children
        self.used = used
        self.bag_edges = bag_edges
        self.length = 1 + sum(c.length for c in children)
        if kind == LEAF:
            self.ser = "(leaf)"
            self.key = _TOK[LEAF]
        elif kind == INTRODUCE or kind == FORGET:
            self.ser = f"({kind} {label} {children[0].ser})"
            self.key = _TOK[kind] + _label_bytes(label) + children[0].key
        elif kind == EDGE:
            self.ser = f"(e {label} {label2} {children[0].ser})"
            self.key = (_TOK[EDGE] + _label_bytes(label) + _label_bytes(label2)
                        + children[0].key)
        else:
            self.ser = "(j " + " ".join(c.ser for c in children) + ")"
            self.key = _TOK[JOIN] + b"".join(c.key for c in children) + _END

    def __repr__(self):
        return f"Term({self.ser})" if self.length <= 12 else f"Term(<{self.length} ops>)"


def _check_label(i):
    if not isinstance(i, int) or i < 1:
        raise TermError(f"labels are positive integers, got {i!r}")


def leaf() -> Term:
    return Term(LEAF, None, None, (), frozenset(), frozenset())


def introduce(i: int, child: Term) -> Term:
    _check_label(i)
    if i in child.used:
        raise TermError(f"introduce {i}: label already in use")
    return Term(INTRODUCE, i, None, (child,), child.used | {i}, child.bag_edges)


def forget(i: int, child: Term) -> Term:
    _check_label(i)
    if i not in child.used:
        raise TermError(f"forget {i}: label not in use")
    return Term(
        FORGET, i, None, (child,),
        child.used - {i},
        frozenset(e for e in child.bag_edges if i not in e),
    )


def edge(i: int, j: int, child: Term) -> Term:
    _check_label(i)
    _check_label(j)
    if i == j:
        raise TermError(f"edge {i} {j}: labels must differ")
    if i not in child.used or j not in child.used:
        raise TermError(f"edge {i} {j}: both labels must be in use")
    pair = (i, j) if i < j else (j, i)
    if pair in child.bag_edges:
        raise TermError(f"edge {i} {j}: already present")
    return Term(EDGE, i, j, (child,), child.used, child.bag_edges | {pair})


def join(children: Sequence[Term]) -> Term:
    kids = tuple(children)
    if len(kids) < 2:
        raise TermError(f"join needs arity at least 2, got {len(kids)}")
    used = kids[0].used
    for c in kids[1:]:
        if c.used != used:
            raise TermError("join arguments must use the same labels")
    for c in kids:
        if c.bag_edges:
            raise TermError("join arguments must have edge-free boundaries")
    return Term(JOIN, None, None, kids, used, frozenset())


def length(t: Term) -> int:
    """Number of operator nodes in the term."""
    return t.length


def compare(a: Term, b: Term) -> int:
    """Total term order: -1, 0 or 1. Zero exactly for structural equality."""
    if a.key < b.key:
        return -1
    if a.key > b.key:
        return 1
    return 0


def serialize(t: Term) -> str:
    return t.ser


# ---------------------------------------------------------------------------
# parsing


def parse(text: str) -> Term:
    """Parse the canonical S-expression grammar; raises TermError with the
    byte offset on grammar or invariant violations."""
    tokens = _tokenize(text)
    pos = 0

    # iterative shift/reduce over an explicit frame stack
    stack: list[list] = []  # frames: [opname, op_pos, labels, children]
    result = None
    i = 0
    while i < len(tokens):
        tok, off = tokens[i]
        if result is not None:
            raise TermError("trailing input after term", off)
        if tok == "(":
            if i + 1 >= len(tokens):
                raise TermError("unterminated term", off)
            op, op_off = tokens[i + 1]
            if op not in (LEAF, INTRODUCE, FORGET, EDGE, JOIN):
                raise TermError(f"unknown operator {op!r}", op_off)
            stack.append([op, op_off, [], []])
            i += 2
            continue
        if tok == ")":
            if not stack:
                raise TermError("unbalanced ')'", off)
            op, op_off, labels, children = stack.pop()
            try:
                term = _reduce(op, labels, children)
            except TermError as exc:
                raise TermError(str(exc), op_off) from None
            if stack:
                stack[-1][3].append(term)
            else:
                result = term
            i += 1
            continue
        # an atom: only valid as a label right after i/f/e
        if not stack:
            raise TermError(f"unexpected token {tok!r}", off)
        frame = stack[-1]
        if frame[0] in (INTRODUCE, FORGET, EDGE) and not frame[3]:
            limit = 2 if frame[0] == EDGE else 1
            if len(frame[2]) < limit and tok.isdigit():
                frame[2].append(int(tok))
                i += 1
                continue
        raise TermError(f"unexpected token {tok!r}", off)
    if result is None:
        raise TermError("empty input", len(text))
    return result


def _reduce(op, labels, children):
    if op == LEAF:
        if labels or children:
            raise TermError("leaf takes no arguments")
        return leaf()
    if op in (INTRODUCE, FORGET):
        if len(labels) != 1 or len(children) != 1:
            raise TermError(f"{op} takes one label and one subterm")
        return (introduce if op == INTRODUCE else forget)(labels[0], children[0])
    if op == EDGE:
        if len(labels) != 2 or len(children) != 1:
            raise TermError("e takes two labels and one subterm")
        return edge(labels[0], labels[1], children[0])
    return join(children)


def _tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in "()":
            out.append((c, i))
            i += 1
            continue
        j = i
        while j < n and text[j] not in " \t\r\n()":
            j += 1
        word = text[i:j]
        if not (word.isdigit() or word.isalpha()):
            raise TermError(f"bad token {word!r}", i)
        if word.isdigit() and (len(word) > 1 and word[0] == "0" or int(word) < 1):
            raise TermError(f"labels are positive decimals, got {word!r}", i)
        out.append((word, i))
        i = j
    return out


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class LabelledGraph:
    """Evaluation result: the built graph, the partial injective labelling
    (vertex -> label), and for each vertex the pre-order positions of the
    introduce operators that created it (copies merged by joins share all
    their creation sites)."""

    graph: object
    labelling: dict[int, int]
    witness: dict[int, tuple[int, ...]]


@dataclass
class _FullEval:
    graph: object
    labelling: dict[int, int]
    witness: dict[int, tuple[int, ...]]
    parent: list  # per pre-order position, parent position (None for root)
    position_node: list  # per position, the Term object
    position_bag: list  # per position, frozenset of final vertex ids
    forgotten: dict[int, int]  # forget position -> final vertex id


class _UnionFind:
    def __init__(self):
        self.parent = []

    def make(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _eval_full(t: Term) -> _FullEval:
    from .graph import Graph

    uf = _UnionFind()
    created_at: list[int] = []  # creation id -> position of its introduce
    raw_edges: list[tuple[int, int]] = []
    parent: list = []
    position_node: list[Term] = []
    position_lam: list[dict] = []
    forgotten_creation: dict[int, int] = {}

    # iterative DFS; positions numbered in pre-order, children left to right
    stack: list[tuple[Term, int, list]] = []
    root_lam = None

    def open_node(node, par):
        parent.append(par)
        position_node.append(node)
        position_lam.append(None)
        return len(parent) - 1

    pos0 = open_node(t, None)
    stack.append((t, pos0, []))
    while stack:
        node, pos, child_lams = stack[-1]
        if len(child_lams) < len(node.children):
            child = node.children[len(child_lams)]
            cpos = open_node(child, pos)
            stack.append((child, cpos, []))
            continue
        stack.pop()
        if node.kind == LEAF:
            lam = {}
        elif node.kind == INTRODUCE:
            lam = dict(child_lams[0])
            cid = uf.make()
            created_at.append(pos)
            lam[node.label] = cid
        elif node.kind == FORGET:
            lam = dict(child_lams[0])
            forgotten_creation[pos] = lam.pop(node.label)
        elif node.kind == EDGE:
            lam = child_lams[0]
            raw_edges.append((lam[node.label], lam[node.label2]))
        else:  # join: identify equally labelled vertices across children
            lam = {}
            for i in node.children[0].used:
                rep = child_lams[0][i]
                for cl in child_lams[1:]:
                    uf.union(rep, cl[i])
                lam[i] = rep
        position_lam[pos] = lam
        if stack:
            stack[-1][2].append(lam)
        else:
            root_lam = lam

    # compress union-find classes to final ids, ordered by first creation
    reps = sorted({uf.find(c) for c in range(len(created_at))})
    final_id = {rep: i for i, rep in enumerate(reps)}
    vertex_of = [final_id[uf.find(c)] for c in range(len(created_at))]
    n = len(reps)
    edges = [(vertex_of[a], vertex_of[b]) for a, b in raw_edges]
    graph = Graph(n, edges)
    labelling = {vertex_of[cid]: lab for lab, cid in root_lam.items()}
    witness: dict[int, list[int]] = {v: [] for v in range(n)}
    for cid, v in enumerate(vertex_of):
        witness[v].append(created_at[cid])
    bags = [
        frozenset(vertex_of[cid] for cid in lam.values())
        for lam in position_lam
    ]
    return _FullEval(
        graph=graph,
        labelling=labelling,
        witness={v: tuple(sorted(ps)) for v, ps in witness.items()},
        parent=parent,
        position_node=position_node,
        position_bag=bags,
        forgotten={pos: vertex_of[cid] for pos, cid in forgotten_creation.items()},
    )


def eval(t: Term) -> LabelledGraph:  # noqa: A001 - mirrors the operator name
    """Build the labelled graph denoted by the term.

    Vertex ids are assigned deterministically: classes of identified
    creations, ordered by their first creation in post-order.
    """
    full = _eval_full(t)
    return LabelledGraph(full.graph, full.labelling, full.witness)


def check_witnessed_eval(t: Term, g, intro_vertex) -> dict[int, int]:
    """Verify that the term builds exactly g under the given witness.

    ``intro_vertex`` maps each introduce node (by object identity) to the
    vertex of g it stands for.  All creation sites of an evaluated vertex
    must agree on that witness, the witness must be a bijection onto V(g),
    and the built edges must be exactly E(g).  Returns the mapping from
    evaluated vertex ids to vertices of g.
    """
    full = _eval_full(t)
    ev_to_g = {}
    for ev, positions in full.witness.items():
        targets = {intro_vertex[full.position_node[p]] for p in positions}
        if len(targets) != 1:
            raise AssertionError(f"witness mismatch: vertex {ev} maps to {targets}")
        ev_to_g[ev] = targets.pop()
    if sorted(ev_to_g.values()) != sorted(g.vertices()):
        raise AssertionError("witness is not a bijection onto the vertex set")
    built = {tuple(sorted((ev_to_g[u], ev_to_g[v])))
             for u, v in full.graph.edges()}
    if built != set(g.edges()):
        raise AssertionError("built edges differ from the target graph")
    return ev_to_g
