"""Graph-level vertex decomposability and shedding vertices.

A graph is vertex decomposable when it is totally disconnected or has a
vertex x whose exchange condition holds and whose deletion and closed-
neighborhood deletion are both vertex decomposable.  The term ``shedding
vertex`` here demands all three clauses; the weaker notion that only asks
for the exchange condition is exposed separately as
:func:`satisfies_exchange` because several constructions rely on one or the
other specifically.
"""
from __future__ import annotations

from dataclasses import dataclass

from .common import DEFAULT_VERTEX_CAP, SizeCapError, Verdict
from .construction import AttachmentSpec, attach
from .graphs import Label, SimpleGraph, adjacency_masks, label_key, sort_labels
from .independence import _mis_masks

#: Cross-call cache of decomposability decisions, keyed by labeled graph.
_VD_CACHE: dict[tuple, bool] = {}


@dataclass(frozen=True)
class VdNode:
    """Node of a decomposition tree over vertex subsets of the root graph."""

    vertices: tuple[Label, ...]
    vertex: Label | None = None  # shed vertex; None marks an edgeless leaf
    del_child: "VdNode | None" = None
    link_child: "VdNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.vertex is None


@dataclass(frozen=True)
class VdCertificate:
    """Outcome of the decomposability decision with supporting evidence.

    On success ``tree`` is a recursion tree whose internal nodes name the
    shed vertex and whose leaves are edgeless vertex subsets; on failure
    ``failing`` is the minimal failing induced subgraph encountered.
    """

    outcome: bool
    tree: VdNode | None = None
    failing: SimpleGraph | None = None

    def __bool__(self) -> bool:
        return self.outcome


class _VdSearch:
    """Bitmask recursion over induced subgraphs of one root graph."""

    def __init__(self, g: SimpleGraph):
        self.g = g
        self.vertices = g.vertices
        self.adj = adjacency_masks(g)
        self.full = (1 << len(self.vertices)) - 1
        self.local: dict[int, bool] = {}
        self.failed_masks: list[int] = []

    def labels(self, mask: int) -> tuple[Label, ...]:
        out = []
        m = mask
        while m:
            b = m & -m
            m ^= b
            out.append(self.vertices[b.bit_length() - 1])
        return tuple(out)

    def graph_key(self, mask: int) -> tuple:
        labels = self.labels(mask)
        lset = set(labels)
        edges = frozenset(e for e in self.g.edge_set if e[0] in lset and e[1] in lset)
        return (labels, edges)

    def is_edgeless(self, mask: int) -> bool:
        m = mask
        while m:
            b = m & -m
            m ^= b
            if self.adj[b.bit_length() - 1] & mask:
                return False
        return True

    def component_masks(self, mask: int) -> list[int]:
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                grow = self.adj[b.bit_length() - 1] & mask & ~comp
                comp |= grow
                frontier |= grow
            comps.append(comp)
            rest &= ~comp
        return comps

    def mis_masks(self, mask: int) -> list[int]:
        idx = [i for i in range(len(self.vertices)) if mask >> i & 1]
        sub_adj = []
        for i in idx:
            m = self.adj[i] & mask
            packed = 0
            for pos, j in enumerate(idx):
                if m >> j & 1:
                    packed |= 1 << pos
            sub_adj.append(packed)
        out = []
        for packed in _mis_masks(sub_adj):
            m = 0
            pos = 0
            while packed:
                if packed & 1:
                    m |= 1 << idx[pos]
                packed >>= 1
                pos += 1
            out.append(m)
        return out

    def exchange(self, mask: int, xbit: int) -> bool:
        x = xbit.bit_length() - 1
        nbrs = self.adj[x] & mask
        if not nbrs:
            return False
        rest = mask & ~(nbrs | xbit)
        for s in self.mis_masks(rest):
            ok = False
            m = nbrs
            while m:
                b = m & -m
                m ^= b
                if not self.adj[b.bit_length() - 1] & s:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def candidates(self, mask: int) -> list[int]:
        bits = []
        m = mask
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            bits.append((-(self.adj[i] & mask).bit_count(), label_key(self.vertices[i]), b))
        bits.sort()
        return [b for _, _, b in bits]

    def decide(self, mask: int) -> bool:
        cached = self.local.get(mask)
        if cached is not None:
            return cached
        comps = self.component_masks(mask)
        if len(comps) > 1:
            result = all(self.decide_component(c) for c in comps)
        else:
            result = self.decide_component(mask) if mask else True
        self.local[mask] = result
        return result

    def decide_component(self, mask: int) -> bool:
        cached = self.local.get(mask)
        if cached is not None:
            return cached
        if self.is_edgeless(mask):
            self.local[mask] = True
            return True
        key = self.graph_key(mask)
        hit = _VD_CACHE.get(key)
        if hit is not None:
            self.local[mask] = hit
            return hit
        result = False
        for xbit in self.candidates(mask):
            if not self.exchange(mask, xbit):
                continue
            x = xbit.bit_length() - 1
            if self.decide(mask & ~xbit) and self.decide(mask & ~(self.adj[x] & mask | xbit)):
                result = True
                break
        self.local[mask] = result
        _VD_CACHE[key] = result
        if not result:
            self.failed_masks.append(mask)
        return result

    def build_tree(self, mask: int, nodes: dict[int, VdNode]) -> VdNode:
        node = nodes.get(mask)
        if node is not None:
            return node
        labels = sort_labels(self.labels(mask))
        if self.is_edgeless(mask):
            node = VdNode(vertices=labels)
            nodes[mask] = node
            return node
        for xbit in self.candidates(mask):
            if not self.exchange(mask, xbit):
                continue
            x = xbit.bit_length() - 1
            del_mask = mask & ~xbit
            link_mask = mask & ~(self.adj[x] & mask | xbit)
            if self.decide(del_mask) and self.decide(link_mask):
                node = VdNode(
                    vertices=labels,
                    vertex=self.vertices[x],
                    del_child=self.build_tree(del_mask, nodes),
                    link_child=self.build_tree(link_mask, nodes),
                )
                nodes[mask] = node
                return node
        raise AssertionError("no shedding vertex while building a certified tree")


def is_vertex_decomposable(
    g: SimpleGraph, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> VdCertificate:
    """Decide vertex decomposability with a replayable certificate.

    The recursion decomposes per connected component and memoizes on the
    surviving vertex subset; candidate shedding vertices are tried in
    descending degree order with label tie-breaking, so certificates are
    deterministic.
    """
    if len(g.vertices) > vertex_cap:
        raise SizeCapError(f"graph has {len(g.vertices)} vertices; cap is {vertex_cap}")
    search = _VdSearch(g)
    if search.decide(search.full):
        tree = search.build_tree(search.full, {})
        return VdCertificate(outcome=True, tree=tree)
    failing = min(
        search.failed_masks, key=lambda m: (m.bit_count(), m)
    )
    return VdCertificate(outcome=False, failing=g.induced(search.labels(failing)))


def satisfies_exchange(g: SimpleGraph, x: Label, vertex_cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """Exchange condition at x: every independent set S of g minus N[x]
    admits a neighbor y of x with S + {y} independent in g minus {x}.

    Checking maximal independent sets suffices: a y that works for a
    superset works for every subset.
    """
    if x not in g:
        raise ValueError(f"unknown vertex: {x!r}")
    if len(g.vertices) > vertex_cap:
        raise SizeCapError(f"graph has {len(g.vertices)} vertices; cap is {vertex_cap}")
    search = _VdSearch(g)
    xbit = 1 << g.vertices.index(x)
    return search.exchange(search.full, xbit)


def is_shedding_vertex(g: SimpleGraph, x: Label, vertex_cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """Strong shedding test: exchange plus decomposability of both deletions."""
    if x not in g:
        raise ValueError(f"unknown vertex: {x!r}")
    if not satisfies_exchange(g, x, vertex_cap):
        return False
    keep = set(g.vertex_set)
    minus_x = g.induced(keep - {x})
    minus_nx = g.induced(keep - set(g.closed_neighborhood(x)))
    return (
        is_vertex_decomposable(minus_x, vertex_cap).outcome
        and is_vertex_decomposable(minus_nx, vertex_cap).outcome
    )


def verify_vd_certificate(g: SimpleGraph, cert: VdCertificate) -> bool:
    """Replay a success certificate: leaves edgeless, internal nodes shed."""
    if not cert.outcome or cert.tree is None:
        return False

    def walk(node: VdNode) -> bool:
        sub = g.induced(node.vertices)
        if node.is_leaf:
            return sub.is_edgeless()
        x = node.vertex
        if x not in sub or not satisfies_exchange(sub, x):
            return False
        want_del = set(node.vertices) - {x}
        want_link = set(node.vertices) - set(sub.closed_neighborhood(x))
        if set(node.del_child.vertices) != want_del:
            return False
        if set(node.link_child.vertices) != want_link:
            return False
        return walk(node.del_child) and walk(node.link_child)

    return set(cert.tree.vertices) == set(g.vertex_set) and walk(cert.tree)


def format_vd_tree(cert: VdCertificate) -> str:
    """Indented text rendering of a decomposition tree; repeated subtrees
    are printed once and referenced by node number afterwards."""
    if not cert.outcome or cert.tree is None:
        return "not vertex decomposable\n"
    lines: list[str] = []
    numbered: dict[int, int] = {}

    def fmt_set(labels) -> str:
        from .graphs import format_label

        return "{" + ",".join(format_label(v) for v in labels) + "}"

    def walk(node: VdNode, depth: int, role: str) -> None:
        from .graphs import format_label

        pad = "  " * depth
        seen = numbered.get(id(node))
        if seen is not None:
            lines.append(f"{pad}{role}-> (see node {seen})")
            return
        number = len(numbered) + 1
        numbered[id(node)] = number
        if node.is_leaf:
            lines.append(f"{pad}{role}node {number}: leaf {fmt_set(node.vertices)} edgeless")
            return
        lines.append(
            f"{pad}{role}node {number}: shed {format_label(node.vertex)} on {fmt_set(node.vertices)}"
        )
        walk(node.del_child, depth + 1, "delete ")
        walk(node.link_child, depth + 1, "drop-nbhd ")

    walk(cert.tree, 0, "")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AttachmentVdReport:
    """Joint decomposability picture of an attachment instance.

    ``parts_vd`` and ``attach_shedding`` record per-part results; the two
    implications relating them to the attached graph's decomposability
    should hold on every valid instance, and any breach lands in
    ``violations``.
    """

    parts_vd: tuple[bool, ...]
    attach_shedding: tuple[bool, ...]
    whole_vd: bool
    violations: tuple[str, ...]

    @property
    def all_parts_vd(self) -> bool:
        return all(self.parts_vd)

    @property
    def all_attach_shedding(self) -> bool:
        return all(self.attach_shedding)


def check_attachment_vd(spec: AttachmentSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> AttachmentVdReport:
    """Evaluate part decomposability, attachment shedding, and whole-graph
    decomposability, asserting the expected implications between them."""
    parts_vd = tuple(
        is_vertex_decomposable(part, vertex_cap).outcome for part, _ in spec.parts
    )
    shedding = tuple(
        is_shedding_vertex(part, attach_at, vertex_cap) for part, attach_at in spec.parts
    )
    whole = is_vertex_decomposable(attach(spec), vertex_cap).outcome
    violations = []
    if all(parts_vd) and all(shedding) and not whole:
        violations.append(
            "all parts decomposable with shedding attachment vertices, yet the attached graph is not"
        )
    if whole and not all(parts_vd):
        violations.append("attached graph decomposable but some part is not")
    return AttachmentVdReport(
        parts_vd=parts_vd,
        attach_shedding=shedding,
        whole_vd=whole,
        violations=tuple(violations),
    )
