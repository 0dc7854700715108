"""Homology of independence complexes computed at the graph level.

The boundary-matrix route in :mod:`indecomp.complexes` is definitional but
expensive on attached-graph instances.  This engine computes the same
reduced homology ranks through standard homotopy-preserving graph
reductions, falling back to matrices only on irreducible cores:

* isolated vertex: the complex is a cone, hence acyclic;
* disjoint components: the complex is a join, ranks convolve (Kunneth
  over a field, with the degree shift of the join);
* ``N(u) <= N(v)`` for distinct u, v: folding, the complex deformation
  retracts onto the one without v;
* ``N[u] <= N[v]``: the deletion/link decomposition splits as a wedge,
  so ranks add with a suspension shift.

Cohen-Macaulayness localizes to vanishing below dimension on every
``g - N[F]`` (links of independence complexes are again independence
complexes), and the skeleton criterion for sequential Cohen-Macaulayness
localizes the same way; both are driven off the reduction engine plus
per-subgraph caches shared across calls.
"""
from __future__ import annotations

import itertools

from .common import DEFAULT_FACE_CAP, SizeCapError, Verdict
from .complexes import SimplicialComplex, reduced_homology
from .graphs import SimpleGraph, adjacency_masks, sort_labels
from .independence import _mis_masks, maximal_independent_sets

_HOMOLOGY_CACHE: dict[tuple, dict[int, int]] = {}
_SKELETON_CACHE: dict[tuple, bool] = {}
_ALPHA_CACHE: dict[tuple, int] = {}


def _join_convolve(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    """Ranks of a join: degree-(i + j + 1) products of factor ranks."""
    out: dict[int, int] = {}
    for i, a in p.items():
        for j, b in q.items():
            d = i + j + 1
            out[d] = out.get(d, 0) + a * b
    return out


def _shift(p: dict[int, int], by: int) -> dict[int, int]:
    return {d + by: r for d, r in p.items()}


def _add(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out = dict(p)
    for d, r in q.items():
        out[d] = out.get(d, 0) + r
    return {d: r for d, r in out.items() if r}


def independence_homology(
    g: SimpleGraph, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> dict[int, int]:
    """Reduced homology ranks of the independence complex of ``g``."""
    key = (*g.cache_key(), field)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is not None:
        return dict(hit)
    result = _homology_uncached(g, field, face_cap)
    _HOMOLOGY_CACHE[key] = dict(result)
    return result


def _homology_uncached(g: SimpleGraph, field: str, face_cap: int) -> dict[int, int]:
    n = len(g.vertices)
    if n == 0:
        return {-1: 1}
    degrees = {v: g.degree(v) for v in g.vertices}
    if any(d == 0 for d in degrees.values()):
        return {}  # cone over the rest: contractible
    from .graphs import components

    comps = components(g)
    if len(comps) > 1:
        profile = independence_homology(comps[0], field, face_cap)
        for comp in comps[1:]:
            profile = _join_convolve(profile, independence_homology(comp, field, face_cap))
        return profile
    verts = g.vertices
    nbrs = {v: g.neighbors(v) for v in verts}
    for u, v in itertools.permutations(verts, 2):
        if u != v and nbrs[u] <= nbrs[v]:
            # fold: the complex retracts onto the copy without v
            return independence_homology(g.induced(set(g.vertex_set) - {v}), field, face_cap)
    for u in verts:
        for v in nbrs[u]:
            if nbrs[u] <= nbrs[v] | {v}:
                # N[u] <= N[v]: deletion-link wedge split at v
                keep = set(g.vertex_set)
                del_part = independence_homology(g.induced(keep - {v}), field, face_cap)
                link_part = independence_homology(
                    g.induced(keep - set(g.closed_neighborhood(v))), field, face_cap
                )
                return _add(del_part, _shift(link_part, 1))
    cx = _complex_of(g, face_cap)
    return {d: r for d, r in reduced_homology(cx, field, face_cap).ranks.items() if r}


def _complex_of(g: SimpleGraph, face_cap: int) -> SimplicialComplex:
    family = maximal_independent_sets(g, vertex_cap=max(len(g.vertices), 1))
    return SimplicialComplex(ground=g.vertices, facets=family.sets)


def _alpha(g: SimpleGraph) -> int:
    key = g.cache_key()
    hit = _ALPHA_CACHE.get(key)
    if hit is None:
        family = maximal_independent_sets(g, vertex_cap=max(len(g.vertices), 1))
        hit = max(family.sizes())
        _ALPHA_CACHE[key] = hit
    return hit


def _remnants(g: SimpleGraph) -> list[tuple[frozenset, frozenset]]:
    """Distinct vertex sets of ``g - N[F]`` over independent sets F.

    Returns (remnant vertex set, one F reaching it) pairs; these are the
    vertex supports of all links of the independence complex.
    """
    adj = adjacency_masks(g)
    verts = g.vertices
    n = len(verts)
    full = (1 << n) - 1
    first_face: dict[int, int] = {full: 0}
    queue = [(full, 0)]
    while queue:
        mask, face = queue.pop()
        m = mask
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            nxt = mask & ~(adj[i] | b)
            if nxt not in first_face:
                first_face[nxt] = face | b
                queue.append((nxt, face | b))

    def unpack(mask: int) -> frozenset:
        out = []
        while mask:
            b = mask & -mask
            mask ^= b
            out.append(verts[b.bit_length() - 1])
        return frozenset(out)

    items = sorted(first_face.items(), key=lambda kv: (-kv[0].bit_count(), kv[0]))
    return [(unpack(mask), unpack(face)) for mask, face in items]


def graph_is_cm(
    g: SimpleGraph, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> Verdict:
    """Cohen-Macaulayness of the independence complex, decided graphwise.

    Every link is the independence complex of a vertex-closed remnant, so
    the link condition becomes: homology of each remnant's complex vanishes
    below its dimension.  A non-pure complex always fails, which the
    maximal-set sizes detect without any homology.
    """
    family = maximal_independent_sets(g, vertex_cap=max(len(g.vertices), 1))
    sizes = set(family.sizes())
    if len(sizes) > 1:
        return Verdict(
            holds=False,
            witness={"reason": "not pure", "facet_sizes": tuple(sorted(sizes))},
            detail="maximal independent sets of unequal size",
            field=field,
        )
    for remnant, face in _remnants(g):
        sub = g.induced(remnant)
        top = _alpha(sub) - 1
        if top <= 0:
            continue
        profile = independence_homology(sub, field, face_cap)
        bad = [d for d, r in profile.items() if d < top and r]
        if bad:
            d = min(bad)
            return Verdict(
                holds=False,
                witness={"face": sort_labels(face), "dim": d, "rank": profile[d]},
                detail="link has homology below its dimension",
                field=field,
            )
    return Verdict(holds=True, field=field)


def _independent_sets_of_size(adj: list[int], size: int) -> list[int]:
    """All independent sets of exactly ``size`` vertices, as bitmasks."""
    n = len(adj)
    out: list[int] = []

    def grow(start: int, mask: int, forbidden: int, left: int) -> None:
        if left == 0:
            out.append(mask)
            return
        for i in range(start, n - left + 1):
            b = 1 << i
            if forbidden & b:
                continue
            grow(i + 1, mask | b, forbidden | adj[i], left - 1)

    grow(0, 0, 0, size)
    return out


def _skeleton_vanishes(g: SimpleGraph, k: int, field: str, face_cap: int) -> bool:
    """Does the pure k-skeleton of the independence complex have vanishing
    reduced homology below dimension k?"""
    key = (*g.cache_key(), k, field)
    hit = _SKELETON_CACHE.get(key)
    if hit is not None:
        return hit
    if g.is_edgeless():
        # skeleton of a simplex: (k-1)-connected
        _SKELETON_CACHE[key] = True
        return True
    adj = adjacency_masks(g)
    verts = g.vertices
    tops = _independent_sets_of_size(adj, k + 1)
    faces: set[frozenset] = set()
    for mask in tops:
        members = []
        m = mask
        while m:
            b = m & -m
            m ^= b
            members.append(verts[b.bit_length() - 1])
        for r in range(0, k + 2):
            for comb in itertools.combinations(members, r):
                faces.add(frozenset(comb))
                if len(faces) > face_cap:
                    raise SizeCapError(f"skeleton face count exceeds cap {face_cap}")
    cx = SimplicialComplex.from_facets(
        [f for f in faces if len(f) == k + 1], ground=g.vertices
    )
    profile = reduced_homology(cx, field, face_cap)
    result = not any(profile.rank(d) for d in range(-1, k))
    _SKELETON_CACHE[key] = result
    return result


def graph_is_scm(
    g: SimpleGraph, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> Verdict:
    """Sequential Cohen-Macaulayness via the skeleton criterion, localized.

    Links in the skeleton of an independence complex are skeleta of the
    remnant complexes, so the check reduces to: for every remnant h and
    every k up to dim of h's complex, the pure k-skeleton of h's complex
    has vanishing homology below k.  Raises SizeCapError past the face cap;
    callers must treat that as undecided.
    """
    _count_faces_capped(g, face_cap)
    for remnant, face in _remnants(g):
        sub = g.induced(remnant)
        top = _alpha(sub) - 1
        for k in range(0, top + 1):
            if not _skeleton_vanishes(sub, k, field, face_cap):
                return Verdict(
                    holds=False,
                    witness={"face": sort_labels(face), "skeleton_dim": k},
                    detail="a pure skeleton of a link has homology below its dimension",
                    field=field,
                )
    return Verdict(holds=True, field=field)


def _count_faces_capped(g: SimpleGraph, face_cap: int) -> int:
    """Count independent sets, aborting once the cap is passed."""
    adj = adjacency_masks(g)
    n = len(adj)
    count = 0

    def grow(start: int, forbidden: int) -> None:
        nonlocal count
        count += 1
        if count > face_cap:
            raise SizeCapError(f"independence complex exceeds {face_cap} faces")
        for i in range(start, n):
            b = 1 << i
            if forbidden & b:
                continue
            grow(i + 1, forbidden | adj[i])

    grow(0, 0)
    return count
