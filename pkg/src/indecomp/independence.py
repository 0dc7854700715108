"""Maximal independent sets, unmixedness, and the independence complex.

Enumeration runs pivoted Bron-Kerbosch on the complement graph (maximal
independent sets are exactly maximal cliques of the complement), which is
output-sensitive in practice.  The exhaustive subset filter lives in the
test suite as an oracle and is never the production path.
"""
from __future__ import annotations

from dataclasses import dataclass

from .common import DEFAULT_VERTEX_CAP, SizeCapError
from .complexes import SimplicialComplex
from .graphs import SimpleGraph, adjacency_masks, delete_vertices, label_key, make_family


@dataclass(frozen=True)
class IndependentSetFamily:
    """The complete list of maximal independent sets of a graph."""

    graph: SimpleGraph
    sets: tuple[frozenset, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)


@dataclass(frozen=True)
class UnmixedVerdict:
    """Outcome of the equal-cardinality test on maximal independent sets."""

    holds: bool
    alpha: int
    witness: tuple[frozenset, frozenset] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _mis_masks(masks: list[int]) -> list[int]:
    """Maximal cliques of the complement, as bitmasks (Tomita pivoting)."""
    n = len(masks)
    if n == 0:
        return [0]
    full = (1 << n) - 1
    comp = [full & ~masks[i] & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pux = p | x
        best_u, best_count = -1, -1
        scan = pux
        while scan:
            b = scan & -scan
            scan ^= b
            u = b.bit_length() - 1
            cnt = (p & comp[u]).bit_count()
            if cnt > best_count:
                best_u, best_count = u, cnt
        cand = p & ~comp[best_u]
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            expand(r | b, p & comp[v], x & comp[v])
            p &= ~b
            x |= b

    expand(0, full, 0)
    return out


def _mask_to_set(mask: int, vertices: tuple) -> frozenset:
    out = []
    while mask:
        b = mask & -mask
        mask ^= b
        out.append(vertices[b.bit_length() - 1])
    return frozenset(out)


def set_sort_key(s: frozenset):
    return tuple(sorted((label_key(v) for v in s)))


def maximal_independent_sets(
    g: SimpleGraph, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> IndependentSetFamily:
    """All maximal independent sets, duplicate-free, in canonical order.

    The empty graph yields the single set {} (the empty set is its only
    maximal independent set).
    """
    if len(g.vertices) > vertex_cap:
        raise SizeCapError(
            f"graph has {len(g.vertices)} vertices; enumeration cap is {vertex_cap}"
        )
    masks = adjacency_masks(g)
    sets = [_mask_to_set(m, g.vertices) for m in _mis_masks(masks)]
    sets.sort(key=set_sort_key)
    return IndependentSetFamily(graph=g, sets=tuple(sets))


def independence_number(g: SimpleGraph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Maximum cardinality of a maximal independent set; 0 for the empty graph."""
    family = maximal_independent_sets(g, vertex_cap)
    return max(family.sizes())


def is_unmixed(g: SimpleGraph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> UnmixedVerdict:
    """Do all maximal independent sets share one cardinality?

    On failure the witness carries a smallest and a largest maximal set,
    each the first of its size in canonical order.
    """
    family = maximal_independent_sets(g, vertex_cap)
    sizes = family.sizes()
    alpha = max(sizes)
    lo, hi = min(sizes), alpha
    if lo == hi:
        return UnmixedVerdict(holds=True, alpha=alpha)
    small = next(s for s in family.sets if len(s) == lo)
    large = next(s for s in family.sets if len(s) == hi)
    return UnmixedVerdict(holds=False, alpha=alpha, witness=(small, large))


def cycle_deletion_unmixed(m: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """Is the cycle of length m minus one vertex unmixed?

    Cycles are vertex-transitive, so the choice of deleted vertex is
    immaterial; vertex 1 is used.
    """
    if m < 3:
        raise ValueError("cycle length must be >= 3")
    cycle = make_family("cycle", m)
    return is_unmixed(delete_vertices(cycle, {1}), vertex_cap).holds


def independence_complex(
    g: SimpleGraph, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> SimplicialComplex:
    """The complex whose faces are the independent sets of ``g``.

    Facets are the maximal independent sets; an edgeless graph yields the
    full simplex on its vertex set, and the empty graph the complex {}.
    """
    family = maximal_independent_sets(g, vertex_cap)
    return SimplicialComplex(ground=g.vertices, facets=family.sets)
