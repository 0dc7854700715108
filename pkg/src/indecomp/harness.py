"""Mechanical verification of the library's structural claims.

Each verifier evaluates both sides of an equivalence (or all conditions of
a multi-way characterization) independently and records the condition
vector; any disagreement is surfaced as a violation rather than silently
reconciled.  Sweeps run over exhaustive catalogs of small bases and parts,
with undecided markers for checks that exceed their caps.

Report records are line-oriented and machine-parsable:

    THEOREM <id> INSTANCE <n> CONDITIONS <bits, U for undecided> STATUS <ok|violation>
    SUMMARY THEOREM <id> INSTANCES <n> VIOLATIONS <v>
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .common import DEFAULT_FACE_CAP, DEFAULT_FACET_CAP, DEFAULT_VERTEX_CAP, SizeCapError
from .chordal import is_chordal, valid_attachment_points
from .construction import AttachmentSpec, attach, attachment_spec
from .decomposability import check_attachment_vd, is_vertex_decomposable
from .graph_homology import graph_is_cm, graph_is_scm
from .graphs import (
    SimpleGraph,
    build_graph,
    components,
    delete_vertices,
    format_label,
    is_connected,
    make_family,
)
from .independence import independence_complex, is_unmixed, maximal_independent_sets
from .complexes import is_shellable

THEOREM_IDS = (
    "prop_vd",
    "prop_unmixed",
    "remark_isolated",
    "prop_chordal_del",
    "main1",
    "main2",
    "cor_cycles",
    "remark_tcycles",
)

#: Default face cap for the sweep-level homological checks; instances past
#: it get an undecided marker instead of a verdict.
DEFAULT_SWEEP_FACE_CAP = 2400


@dataclass(frozen=True)
class CatalogPart:
    """A reusable part for attachment sweeps.

    ``route`` records which hypothesis branch the part is meant for in the
    mixed characterizations: ``cycle`` parts are constrained to lengths
    {3, 5}, ``chordal`` parts to being unmixed and glued at a neighbor of a
    simplicial vertex.
    """

    name: str
    graph: SimpleGraph
    attach_at: object
    route: str  # "cycle" | "chordal"


def default_catalog() -> tuple[CatalogPart, ...]:
    """The eight-part sweep catalog.

    The triangle appears twice on purpose (as a cycle-routed C3 and a
    chordal-routed K3), exercising both hypothesis branches on the same
    graph; likewise the 2-edge path appears as a path and as a star.
    """
    p2 = make_family("path", 2)
    return (
        CatalogPart("K2", make_family("complete", 2), 1, "chordal"),
        CatalogPart("P2@middle", p2, 2, "chordal"),
        CatalogPart("C3", make_family("cycle", 3), 1, "cycle"),
        CatalogPart("C4", make_family("cycle", 4), 1, "cycle"),
        CatalogPart("C5", make_family("cycle", 5), 1, "cycle"),
        CatalogPart("C6", make_family("cycle", 6), 1, "cycle"),
        CatalogPart("K3", make_family("complete", 3), 1, "chordal"),
        CatalogPart("K1,2@center", p2, 2, "chordal"),
    )


# -- small-graph enumeration ----------------------------------------------------


def _canonical_signature(n: int, edge_bits: int, pair_index: dict) -> int:
    """Minimum adjacency bitmask over all vertex relabelings (n <= 7)."""
    pairs = list(itertools.combinations(range(n), 2))
    best = None
    for perm in itertools.permutations(range(n)):
        sig = 0
        for k, (i, j) in enumerate(pairs):
            if edge_bits >> k & 1:
                a, b = perm[i], perm[j]
                if a > b:
                    a, b = b, a
                sig |= 1 << pair_index[(a, b)]
        if best is None or sig < best:
            best = sig
    return best


def enumerate_graphs(
    n: int,
    connected: bool | None = None,
    no_isolated: bool | None = None,
    dedup_iso: bool = False,
):
    """All graphs on vertices 1..n matching the filters, in a fixed order."""
    pairs = list(itertools.combinations(range(n), 2))
    pair_index = {p: k for k, p in enumerate(pairs)}
    seen: set[int] = set()
    for edge_bits in range(1 << len(pairs)):
        if dedup_iso:
            sig = _canonical_signature(n, edge_bits, pair_index)
            if sig in seen:
                continue
            seen.add(sig)
        edges = [(i + 1, j + 1) for k, (i, j) in enumerate(pairs) if edge_bits >> k & 1]
        g = build_graph(range(1, n + 1), edges)
        if connected is not None and is_connected(g) != connected:
            continue
        if no_isolated and any(g.degree(v) == 0 for v in g.vertices):
            continue
        yield g


def connected_bases(max_vertices: int) -> list[SimpleGraph]:
    """Connected isolated-vertex-free bases on 2..max vertices, one per
    isomorphism class."""
    out: list[SimpleGraph] = []
    for n in range(2, max_vertices + 1):
        out.extend(enumerate_graphs(n, connected=True, dedup_iso=True))
    return out


def bases_with_isolated(max_vertices: int) -> list[tuple[SimpleGraph, int]]:
    """Bases having >= 1 isolated vertex, paired with their isolated count t.

    Construction: t isolated vertices (labels 1..t) plus an arbitrary
    isolated-vertex-free graph on the remaining labels.
    """
    out: list[tuple[SimpleGraph, int]] = []
    for total in range(1, max_vertices + 1):
        for t in range(1, total + 1):
            rest = total - t
            if rest == 0:
                g = build_graph(range(1, t + 1), [])
                out.append((g, t))
                continue
            if rest == 1:
                continue  # a single leftover vertex would be isolated too
            for h in enumerate_graphs(rest, no_isolated=True, dedup_iso=True):
                shift = {v: v + t for v in h.vertices}
                g = build_graph(
                    range(1, total + 1),
                    [(shift[u], shift[v]) for u, v in h.edge_set],
                )
                out.append((g, t))
    return out


def enumerate_instances(max_base_vertices: int, part_catalog, seed: int | None = None):
    """Deterministic stream of (base, assignment, spec) triples.

    Bases are connected isolated-vertex-free graphs up to isomorphism;
    assignments run over the full cartesian power of the catalog.  When a
    seed is given the stream is a reproducible pseudorandom reordering of
    the same instances.
    """
    instances = []
    for base in connected_bases(max_base_vertices):
        for assignment in itertools.product(part_catalog, repeat=len(base.vertices)):
            instances.append((base, assignment))
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(instances)
    for base, assignment in instances:
        spec = attachment_spec(base, [(p.graph, p.attach_at) for p in assignment])
        yield base, assignment, spec


def sample_instances(max_base_vertices: int, part_catalog, count: int, seed: int):
    """Seeded pseudorandom sample of instances for larger bounds."""
    bases = connected_bases(max_base_vertices)
    rng = random.Random(seed)
    for _ in range(count):
        base = rng.choice(bases)
        assignment = tuple(rng.choice(part_catalog) for _ in base.vertices)
        spec = attachment_spec(base, [(p.graph, p.attach_at) for p in assignment])
        yield base, assignment, spec


def describe_instance(base: SimpleGraph, assignment) -> str:
    base_desc = ";".join(f"{format_label(u)}-{format_label(v)}" for u, v in base.edges)
    if not base_desc:
        base_desc = ",".join(format_label(v) for v in base.vertices)
    parts_desc = ",".join(p.name for p in assignment)
    return f"base[{base_desc}] parts[{parts_desc}]"


# -- condition evaluation ---------------------------------------------------------


def _vector_string(values) -> str:
    return "".join("U" if v is None else ("1" if v else "0") for v in values)


def _decided_disagree(values) -> bool:
    decided = {v for v in values if v is not None}
    return len(decided) > 1


def check_unmixed_attachment(spec: AttachmentSpec, vertex_cap: int = DEFAULT_VERTEX_CAP):
    """Attached graph unmixed <=> every part and every part-minus-attachment
    unmixed.  Requires an isolated-vertex-free base."""
    if any(spec.base.degree(v) == 0 for v in spec.base.vertices):
        raise ValueError("base has an isolated vertex; use the isolated-aware variant")
    left = is_unmixed(attach(spec), vertex_cap).holds
    right = all(
        is_unmixed(part, vertex_cap).holds
        and is_unmixed(delete_vertices(part, {attach_at}), vertex_cap).holds
        for part, attach_at in spec.parts
    )
    return {"left": left, "right": right}


def check_unmixed_attachment_isolated(
    spec: AttachmentSpec, t: int, vertex_cap: int = DEFAULT_VERTEX_CAP
):
    """Isolated-aware unmixedness equivalence: parts on the t isolated base
    vertices are exempt from the minus-attachment clause."""
    isolated = {v for v in spec.base.vertices if spec.base.degree(v) == 0}
    first_t = set(spec.base.vertices[:t])
    if isolated != first_t:
        raise ValueError(
            f"first {t} base vertices must be exactly the isolated ones; isolated set is "
            f"{sorted(map(str, isolated))}"
        )
    left = is_unmixed(attach(spec), vertex_cap).holds
    right = True
    for i, (part, attach_at) in enumerate(spec.parts, start=1):
        if not is_unmixed(part, vertex_cap).holds:
            right = False
            break
        if i > t and not is_unmixed(delete_vertices(part, {attach_at}), vertex_cap).holds:
            right = False
            break
    return {"left": left, "right": right}


def _is_cycle_graph(g: SimpleGraph) -> bool:
    return (
        len(g.vertices) >= 3
        and len(g.edge_set) == len(g.vertices)
        and all(g.degree(v) == 2 for v in g.vertices)
        and is_connected(g)
    )


def _validate_main_preconditions(spec: AttachmentSpec, m: int) -> None:
    problems = []
    if any(spec.base.degree(v) == 0 for v in spec.base.vertices):
        problems.append("base has an isolated vertex")
    for i, (part, attach_at) in enumerate(spec.parts, start=1):
        if i <= m:
            if not _is_cycle_graph(part):
                problems.append(f"part {i} routed as a cycle but is not one")
        else:
            if not is_chordal(part).holds:
                problems.append(f"part {i} routed as chordal but is not")
            elif attach_at not in valid_attachment_points(part):
                problems.append(
                    f"part {i} attached at {attach_at!r}, not a neighbor of a simplicial vertex"
                )
    if problems:
        raise ValueError("; ".join(problems))


def _cycle_sizes_ok(spec: AttachmentSpec, m: int) -> bool:
    return all(len(spec.parts[i][0].vertices) in (3, 5) for i in range(m))


def _shellable_or_none(g: SimpleGraph, facet_cap: int, vertex_cap: int) -> bool | None:
    family = maximal_independent_sets(g, vertex_cap)
    if len(family.sets) > facet_cap:
        return None
    cx = independence_complex(g, vertex_cap)
    return is_shellable(cx, facet_cap).holds


def check_main1(
    spec: AttachmentSpec,
    m: int,
    field: str = "gf2",
    facet_cap: int = DEFAULT_FACET_CAP,
    face_cap: int = DEFAULT_SWEEP_FACE_CAP,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
):
    """Five-way equivalence for cycle/chordal attachments:
    unmixed <=> CM <=> unmixed+shellable <=> unmixed+VD <=> the
    combinatorial predicate (cycle parts in {C3, C5}, chordal parts
    unmixed).  Conditions past their caps are marked undecided (None)."""
    _validate_main_preconditions(spec, m)
    g = attach(spec)
    unmixed = is_unmixed(g, vertex_cap).holds
    combinatorial = _cycle_sizes_ok(spec, m) and all(
        is_unmixed(part, vertex_cap).holds for part, _ in spec.parts[m:]
    )
    cm = graph_is_cm(g, field, face_cap).holds
    if unmixed:
        shell = _shellable_or_none(g, facet_cap, vertex_cap)
        shellable = None if shell is None else shell
        vd = is_vertex_decomposable(g, vertex_cap).outcome
    else:
        shellable = False
        vd = False
    values = {
        "unmixed": unmixed,
        "cm": cm,
        "unmixed_shellable": shellable if shellable is None else (unmixed and shellable),
        "unmixed_vd": unmixed and vd,
        "combinatorial": combinatorial,
    }
    return values


def check_main2(
    spec: AttachmentSpec,
    m: int,
    field: str = "gf2",
    facet_cap: int = DEFAULT_FACET_CAP,
    face_cap: int = DEFAULT_SWEEP_FACE_CAP,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
):
    """Four-way equivalence: sequentially CM <=> shellable <=> vertex
    decomposable <=> cycle parts all in {C3, C5}."""
    _validate_main_preconditions(spec, m)
    g = attach(spec)
    try:
        scm = graph_is_scm(g, field, face_cap).holds
    except SizeCapError:
        scm = None
    shellable = _shellable_or_none(g, facet_cap, vertex_cap)
    vd = is_vertex_decomposable(g, vertex_cap).outcome
    values = {
        "scm": scm,
        "shellable": shellable,
        "vd": vd,
        "cycles_35": _cycle_sizes_ok(spec, m),
    }
    return values


def check_cycle_corollary(
    base: SimpleGraph,
    sizes,
    field: str = "gf2",
    facet_cap: int = DEFAULT_FACET_CAP,
    face_cap: int = DEFAULT_SWEEP_FACE_CAP,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
):
    """All-cycle attachments: decomposable/shellable/sequentially CM hold
    exactly when every attached cycle length lies in {3, 5}."""
    if len(sizes) != len(base.vertices):
        raise ValueError("one cycle size per base vertex")
    if any(s < 3 for s in sizes):
        raise ValueError("cycle sizes must be >= 3")
    spec = attachment_spec(base, [(make_family("cycle", s), 1) for s in sizes])
    g = attach(spec)
    predicate = all(s in (3, 5) for s in sizes)
    vd = is_vertex_decomposable(g, vertex_cap).outcome
    try:
        scm = graph_is_scm(g, field, face_cap).holds
    except SizeCapError:
        scm = None
    shellable = _shellable_or_none(g, facet_cap, vertex_cap)
    return {
        "vd_matches": vd == predicate,
        "scm_matches": None if scm is None else scm == predicate,
        "shellable_matches": None if shellable is None else shellable == predicate,
    }


def build_tcycle_example(t: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> SimpleGraph:
    """A decomposable graph containing t chordless 4-cycles.

    Base: t squares threaded on a path through connector vertices; then a
    pendant edge is attached to every base vertex, which makes every
    attachment vertex shed.  Asserts decomposability and survival of the t
    squares as induced chordless cycles.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    vertices = list(range(1, 4 * t + 1)) + [4 * t + j for j in range(1, t)]
    edges = []
    for c in range(t):
        a = 4 * c + 1
        edges += [(a, a + 1), (a + 1, a + 2), (a + 2, a + 3), (a + 3, a)]
    for j in range(1, t):
        conn = 4 * t + j
        edges += [(4 * (j - 1) + 2, conn), (conn, 4 * j + 1)]
    base = build_graph(vertices, edges)
    whiskered = attach(
        attachment_spec(base, [(make_family("complete", 2), 1)] * len(vertices))
    )
    cert = is_vertex_decomposable(whiskered, vertex_cap)
    if not cert.outcome:
        raise AssertionError("whiskered multi-square graph should be vertex decomposable")
    pos = {b: i for i, b in enumerate(base.vertices, start=1)}
    for c in range(t):
        square = [(pos[4 * c + k], 1) for k in (1, 2, 3, 4)]
        sub = whiskered.induced(square)
        if not (len(sub.edge_set) == 4 and all(sub.degree(v) == 2 for v in square)):
            raise AssertionError(f"square {c + 1} did not survive as an induced chordless cycle")
    return whiskered


# -- theorem runners -------------------------------------------------------------


@dataclass
class TheoremReport:
    """Aggregated outcome of one verification sweep."""

    theorem: str
    instances_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _emit(sink, line: str) -> None:
    if sink is not None:
        sink(line)


def run_verification(
    theorem: str,
    max_base: int = 4,
    max_t: int = 3,
    seed: int | None = None,
    field: str = "gf2",
    facet_cap: int = DEFAULT_FACET_CAP,
    face_cap: int = DEFAULT_SWEEP_FACE_CAP,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    catalog=None,
    sink=None,
) -> TheoremReport:
    """Run one theorem's sweep, streaming records through ``sink``."""
    if theorem not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")
    catalog = default_catalog() if catalog is None else catalog
    report = TheoremReport(theorem=theorem)

    def record(values, desc: str) -> None:
        report.instances_checked += 1
        vec = _vector_string(values)
        bad = _decided_disagree(values)
        status = "violation" if bad else "ok"
        if bad:
            report.violations.append((desc, vec))
        _emit(sink, f"THEOREM {theorem} INSTANCE {report.instances_checked} CONDITIONS {vec} STATUS {status}")

    if theorem == "prop_vd":
        for base, assignment, spec in enumerate_instances(max_base, catalog, seed):
            result = check_attachment_vd(spec, vertex_cap)
            ok = not result.violations
            report.instances_checked += 1
            vec = _vector_string(
                [result.all_parts_vd, result.all_attach_shedding, result.whole_vd]
            )
            if not ok:
                report.violations.append((describe_instance(base, assignment), vec))
            _emit(
                sink,
                f"THEOREM {theorem} INSTANCE {report.instances_checked} CONDITIONS {vec} "
                f"STATUS {'ok' if ok else 'violation'}",
            )
    elif theorem == "prop_unmixed":
        for base, assignment, spec in enumerate_instances(max_base, catalog, seed):
            values = check_unmixed_attachment(spec, vertex_cap)
            record(values.values(), describe_instance(base, assignment))
    elif theorem == "remark_isolated":
        for base, t in bases_with_isolated(max_base):
            for assignment in itertools.product(catalog, repeat=len(base.vertices)):
                spec = attachment_spec(base, [(p.graph, p.attach_at) for p in assignment])
                values = check_unmixed_attachment_isolated(spec, t, vertex_cap)
                record(values.values(), f"t={t} " + describe_instance(base, assignment))
    elif theorem == "prop_chordal_del":
        from .chordal import check_chordal_deletion_unmixed, is_chordal as _chordal

        for n in range(2, max_base + 1):
            for g in enumerate_graphs(n, connected=True, dedup_iso=True):
                if not _chordal(g).holds:
                    continue
                if not is_unmixed(g, vertex_cap).holds:
                    continue
                if not any(g.degree(v) > 0 for v in g.vertices):
                    continue
                verdict = check_chordal_deletion_unmixed(g, vertex_cap)
                record([verdict.holds], f"graph[{';'.join(map(str, g.edges))}]")
    elif theorem in ("main1", "main2"):
        checker = check_main1 if theorem == "main1" else check_main2
        for base, assignment, spec in enumerate_instances(max_base, catalog, seed):
            base_n = len(base.vertices)
            order = sorted(range(base_n), key=lambda i: assignment[i].route != "cycle")
            m = sum(1 for p in assignment if p.route == "cycle")
            perm_base = _permute_base(base, order)
            perm_assignment = tuple(assignment[i] for i in order)
            perm_spec = attachment_spec(
                perm_base, [(p.graph, p.attach_at) for p in perm_assignment]
            )
            values = checker(perm_spec, m, field, facet_cap, face_cap, vertex_cap)
            record(values.values(), describe_instance(base, assignment))
    elif theorem == "cor_cycles":
        sizes_pool = (3, 4, 5, 6)
        for base in connected_bases(max_base):
            for sizes in itertools.product(sizes_pool, repeat=len(base.vertices)):
                values = check_cycle_corollary(
                    base, sizes, field, facet_cap, face_cap, vertex_cap
                )
                record(values.values(), f"base[{';'.join(map(str, base.edges))}] sizes{sizes}")
    elif theorem == "remark_tcycles":
        for t in range(1, max_t + 1):
            try:
                build_tcycle_example(t, vertex_cap)
                record([True], f"t={t}")
            except AssertionError as exc:
                record([False], f"t={t}: {exc}")
    _emit(
        sink,
        f"SUMMARY THEOREM {theorem} INSTANCES {report.instances_checked} "
        f"VIOLATIONS {len(report.violations)}",
    )
    return report


def _permute_base(base: SimpleGraph, order) -> SimpleGraph:
    """Relabel the base so positions in ``order`` become vertices 1..n.

    Used to normalize instances so cycle-routed parts occupy the leading
    positions; the result is isomorphic to the original instance.
    """
    old = base.vertices
    mapping = {old[oi]: new + 1 for new, oi in enumerate(order)}
    return build_graph(
        [mapping[v] for v in old], [(mapping[u], mapping[v]) for u, v in base.edge_set]
    )
