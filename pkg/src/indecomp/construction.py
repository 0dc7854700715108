"""The attachment construction: glue a connected part onto every base vertex.

Given a base graph on n vertices and connected parts G_1..G_n with chosen
attachment vertices, the attached graph identifies part i's attachment
vertex with the i-th base vertex.  Output labels are pairs ``(i, j)`` with
``(i, 1)`` the attachment vertex of part i, so published examples have a
literal representation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .common import FormatError
from .graphs import Label, SimpleGraph, is_connected, label_key, parse_edge_list


@dataclass(frozen=True)
class AttachmentSpec:
    """Base graph plus one (part, attachment vertex) per base vertex.

    Parts are aligned positionally with the base's canonical vertex order:
    ``parts[i]`` is glued onto ``base.vertices[i]``.
    """

    base: SimpleGraph
    parts: tuple[tuple[SimpleGraph, Label], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        n = len(self.base.vertices)
        if len(self.parts) != n:
            raise ValueError(
                f"need exactly one part per base vertex: base has {n}, got {len(self.parts)}"
            )
        seen: set[Label] = set()
        for i, (part, attach_at) in enumerate(self.parts, start=1):
            if len(part.vertices) < 2:
                raise ValueError(f"part {i} has {len(part.vertices)} vertices; need >= 2")
            if not is_connected(part):
                raise ValueError(f"part {i} is not connected")
            if attach_at not in part:
                raise ValueError(f"part {i}: attachment vertex {attach_at!r} not in part")
            overlap = seen & set(part.vertex_set)
            if overlap:
                raise ValueError(f"part {i}: vertex labels collide with an earlier part")
            seen |= set(part.vertex_set)


def attachment_spec(base: SimpleGraph, parts) -> AttachmentSpec:
    """Build a valid spec, relabeling part i's vertices to (i, label).

    Accepts parts whose label sets overlap (e.g. n copies of one catalog
    graph); the relabeling guarantees the disjointness invariant.
    """
    relabeled = []
    for i, (part, attach_at) in enumerate(parts, start=1):
        mapping = {v: (i, v) for v in part.vertices}
        g = SimpleGraph(mapping.values(), [(mapping[u], mapping[v]) for u, v in part.edge_set])
        relabeled.append((g, (i, attach_at)))
    return AttachmentSpec(base, tuple(relabeled))


def attach(spec: AttachmentSpec) -> SimpleGraph:
    """Construct the attached graph with canonical ``(i, j)`` labels.

    Part i's attachment vertex becomes ``(i, 1)``; its remaining vertices
    become ``(i, 2)..(i, m_i)`` in label order.  Base edges join attachment
    vertices; part edges are transported verbatim, so the edge count is
    additive.
    """
    base_order = spec.base.vertices
    vertex_map: dict[Label, tuple[int, int]] = {}
    out_vertices: list[tuple[int, int]] = []
    out_edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for i, (part, attach_at) in enumerate(spec.parts, start=1):
        rest = sorted((v for v in part.vertices if v != attach_at), key=label_key)
        local = {attach_at: (i, 1)}
        for j, v in enumerate(rest, start=2):
            local[v] = (i, j)
        vertex_map.update(local)
        out_vertices.extend(local.values())
        out_edges.extend((local[u], local[v]) for u, v in part.edge_set)
    pos = {b: i for i, b in enumerate(base_order, start=1)}
    for u, v in spec.base.edge_set:
        out_edges.append(((pos[u], 1), (pos[v], 1)))
    return SimpleGraph(out_vertices, out_edges)


def attach_uniform(base: SimpleGraph, part: SimpleGraph, attach_at: Label) -> SimpleGraph:
    """Attach a relabeled copy of one part to every base vertex."""
    n = len(base.vertices)
    return attach(attachment_spec(base, [(part, attach_at)] * n))


# -- attachment-spec text format ---------------------------------------------
#
# A `base:` section holding an edge list, then n `part <i> attach <label>:`
# sections each holding an edge list.  The part sections may also arrive in
# a separate file (see the CLI), in which case the base section is omitted.


def parse_part_sections(text: str, first_line: int = 1):
    """Parse `part <i> attach <label>:` sections into (graph, label) pairs."""
    parts: list[tuple[SimpleGraph, str]] = []
    header: tuple[int, str] | None = None
    buf: list[str] = []

    def flush():
        if header is None:
            return
        idx, attach_at = header
        if idx != len(parts) + 1:
            raise FormatError(f"part sections out of order: expected part {len(parts) + 1}, got {idx}")
        g = parse_edge_list("\n".join(buf))
        parts.append((g, attach_at))

    for lineno, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.strip()
        if line.startswith("part ") and line.endswith(":"):
            flush()
            tokens = line[:-1].split()
            if len(tokens) != 4 or tokens[0] != "part" or tokens[2] != "attach":
                raise FormatError(f"line {lineno}: expected 'part <i> attach <label>:'")
            try:
                idx = int(tokens[1])
            except ValueError:
                raise FormatError(f"line {lineno}: part index {tokens[1]!r} is not an integer")
            header = (idx, tokens[3])
            buf = []
        else:
            if header is None and line and not line.startswith("#"):
                raise FormatError(f"line {lineno}: content before first part header")
            buf.append(raw)
    flush()
    return parts


def parse_attachment_spec(text: str) -> AttachmentSpec:
    """Parse the combined format: a `base:` section followed by part sections."""
    lines = text.splitlines()
    base_start = None
    part_start = len(lines)
    for i, raw in enumerate(lines):
        line = raw.strip()
        if line == "base:":
            if base_start is not None:
                raise FormatError(f"line {i + 1}: duplicate base section")
            base_start = i
        elif line.startswith("part ") and part_start == len(lines):
            part_start = i
    if base_start is None:
        raise FormatError("missing 'base:' section")
    base = parse_edge_list("\n".join(lines[base_start + 1 : part_start]))
    parts = parse_part_sections("\n".join(lines[part_start:]), first_line=part_start + 1)
    return attachment_spec(base, parts)
