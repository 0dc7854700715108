"""Immutable finite simple graphs with deterministic, label-sorted output.

Vertex labels are opaque hashables (ints, strings, or tuples such as the
``(i, j)`` labels produced by the attachment construction).  Every
set-valued result is returned sorted by a type-aware label key so that
certificates and enumerations are reproducible across runs.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .common import FormatError

Label = Hashable


def label_key(label: Label):
    """Total order on mixed-type labels: ints, then strings, then tuples."""
    if isinstance(label, bool):
        return (0, int(label), "")
    if isinstance(label, int):
        return (0, label, "")
    if isinstance(label, str):
        return (1, 0, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(part) for part in label), "")
    return (3, 0, repr(label))


def format_label(label: Label) -> str:
    """Render a label as a single whitespace-free token; tuples dot-join."""
    if isinstance(label, tuple):
        return ".".join(format_label(part) for part in label)
    return str(label)


def sort_labels(labels: Iterable[Label]) -> tuple[Label, ...]:
    return tuple(sorted(labels, key=label_key))


class SimpleGraph:
    """Finite simple undirected graph: no loops, no multi-edges.

    Instances are immutable after construction and hash/compare by their
    labeled vertex and edge sets, so they can serve as cache keys.
    """

    __slots__ = ("_vertices", "_vset", "_adj", "_edges", "_hash")

    def __init__(self, vertices: Iterable[Label], edges: Iterable[Sequence[Label]]):
        vlist = list(vertices)
        vset = set(vlist)
        if len(vset) != len(vlist):
            seen: set[Label] = set()
            for v in vlist:
                if v in seen:
                    raise ValueError(f"duplicate vertex label: {v!r}")
                seen.add(v)
        adj: dict[Label, set[Label]] = {v: set() for v in vlist}
        eset: set[tuple[Label, Label]] = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop edge at vertex {u!r}")
            for w in (u, v):
                if w not in vset:
                    raise ValueError(f"edge endpoint {w!r} is not a declared vertex")
            a, b = sorted((u, v), key=label_key)
            eset.add((a, b))
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = sort_labels(vlist)
        self._vset = frozenset(vset)
        self._adj = {v: frozenset(nbrs) for v, nbrs in adj.items()}
        self._edges = frozenset(eset)
        self._hash: int | None = None

    @property
    def vertices(self) -> tuple[Label, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset:
        return self._vset

    @property
    def edges(self) -> tuple[tuple[Label, Label], ...]:
        return tuple(sorted(self._edges, key=lambda e: (label_key(e[0]), label_key(e[1]))))

    @property
    def edge_set(self) -> frozenset:
        return self._edges

    def __contains__(self, v: Label) -> bool:
        return v in self._vset

    def __len__(self) -> int:
        return len(self._vertices)

    def neighbors(self, v: Label) -> frozenset:
        if v not in self._vset:
            raise ValueError(f"unknown vertex: {v!r}")
        return self._adj[v]

    def closed_neighborhood(self, v: Label) -> frozenset:
        return self.neighbors(v) | {v}

    def degree(self, v: Label) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: Label, v: Label) -> bool:
        return v in self.neighbors(u)

    def is_edgeless(self) -> bool:
        return not self._edges

    def induced(self, keep: Iterable[Label]) -> "SimpleGraph":
        kset = set(keep)
        return SimpleGraph(
            kset,
            [e for e in self._edges if e[0] in kset and e[1] in kset],
        )

    def cache_key(self) -> tuple:
        return (self._vertices, self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self._vset == other._vset and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"SimpleGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


def build_graph(vertices: Iterable[Label], edges: Iterable[Sequence[Label]]) -> SimpleGraph:
    """Construct a validated SimpleGraph from labels and unordered pairs."""
    return SimpleGraph(vertices, edges)


def neighborhood(g: SimpleGraph, v: Label, closed: bool = False) -> tuple[Label, ...]:
    """Open or closed neighborhood of ``v``, sorted by label."""
    nbrs = g.closed_neighborhood(v) if closed else g.neighbors(v)
    return sort_labels(nbrs)


def delete_vertices(g: SimpleGraph, remove: Iterable[Label]) -> SimpleGraph:
    """Induced subgraph on the complement of ``remove``."""
    rset = set(remove)
    unknown = rset - set(g.vertex_set)
    if unknown:
        raise ValueError(f"unknown vertex in deletion set: {sorted(unknown, key=label_key)!r}")
    return g.induced(set(g.vertex_set) - rset)


def components(g: SimpleGraph) -> list[SimpleGraph]:
    """Maximal connected induced subgraphs, ordered by smallest label."""
    seen: set[Label] = set()
    out: list[SimpleGraph] = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(g.induced(comp))
    return out


def is_connected(g: SimpleGraph) -> bool:
    return len(components(g)) <= 1


def make_family(kind: str, size: int) -> SimpleGraph:
    """Named graph constructors with canonical integer labels.

    ``cycle``: C_n on vertices 1..n (n >= 3).
    ``path``: the path of length ``size`` -- size counts EDGES, so
    ``make_family("path", 2)`` has 3 vertices.
    ``complete``: K_n on vertices 1..n (n >= 1).
    """
    if kind == "cycle":
        if size < 3:
            raise ValueError("cycle needs size >= 3")
        verts = range(1, size + 1)
        edges = [(i, i + 1) for i in range(1, size)] + [(size, 1)]
        return SimpleGraph(verts, edges)
    if kind == "path":
        if size < 1:
            raise ValueError("path needs size >= 1 (size counts edges)")
        verts = range(1, size + 2)
        edges = [(i, i + 1) for i in range(1, size + 1)]
        return SimpleGraph(verts, edges)
    if kind == "complete":
        if size < 1:
            raise ValueError("complete graph needs size >= 1")
        verts = range(1, size + 1)
        edges = [(i, j) for i in range(1, size + 1) for j in range(i + 1, size + 1)]
        return SimpleGraph(verts, edges)
    raise ValueError(f"unknown family kind: {kind!r}")


def vertex_index(g: SimpleGraph) -> dict[Label, int]:
    """Map each vertex to its position in the canonical vertex order."""
    return {v: i for i, v in enumerate(g.vertices)}


def adjacency_masks(g: SimpleGraph) -> list[int]:
    """Adjacency as bitmasks over canonical vertex positions."""
    idx = vertex_index(g)
    masks = [0] * len(g.vertices)
    for u, v in g.edge_set:
        masks[idx[u]] |= 1 << idx[v]
        masks[idx[v]] |= 1 << idx[u]
    return masks


# -- edge-list text format ---------------------------------------------------
#
# One edge per line as two whitespace-separated labels; lines starting with
# `#` are comments; isolated vertices are declared on `vertex <label>` lines.


def parse_edge_list(text: str) -> SimpleGraph:
    vertices: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise FormatError(f"line {lineno}: expected 'vertex <label>'")
            vertices.add(tokens[1])
            continue
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected two labels, got {len(tokens)}")
        u, v = tokens
        if u == v:
            raise FormatError(f"line {lineno}: loop edge at {u!r}")
        vertices.add(u)
        vertices.add(v)
        edges.append((u, v))
    return SimpleGraph(vertices, edges)


def format_edge_list(g: SimpleGraph) -> str:
    lines: list[str] = []
    isolated = [v for v in g.vertices if g.degree(v) == 0]
    for v in isolated:
        lines.append(f"vertex {format_label(v)}")
    for u, v in g.edges:
        lines.append(f"{format_label(u)} {format_label(v)}")
    return "\n".join(lines) + ("\n" if lines else "")
