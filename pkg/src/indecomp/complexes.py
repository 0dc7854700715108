"""Simplicial complexes: links, skeleta, homology, and structural properties.

Conventions.  A complex is represented by its facets over an ordered ground
set.  The VOID complex (no faces at all) and the IRRELEVANT complex (single
facet {}) are distinct values; the irrelevant complex is pure, shellable,
Cohen-Macaulay, sequentially Cohen-Macaulay, and vertex decomposable, which
lets every recursion bottom out cleanly.  Homology is reduced: the empty
face is a (-1)-dimensional cell, so the irrelevant complex has rank 1 in
dimension -1 and a complex with c components has rank c - 1 in dimension 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable

from .common import DEFAULT_FACE_CAP, DEFAULT_FACET_CAP, FormatError, SizeCapError, Verdict
from .graphs import Label, format_label, label_key, sort_labels


def face_key(face: frozenset):
    return tuple(sorted(label_key(v) for v in face))


def _prune_to_maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=len, reverse=True)
    out: list[frozenset] = []
    for s in uniq:
        if not any(s < t for t in out):
            out.append(s)
    return out


class SimplicialComplex:
    """A finite simplicial complex given by its facets."""

    __slots__ = ("_ground", "_facets")

    def __init__(self, ground: Iterable[Label], facets: Iterable[frozenset]):
        self._ground = sort_labels(ground)
        gset = set(self._ground)
        fl = [frozenset(f) for f in facets]
        for f in fl:
            if not f <= gset:
                raise ValueError("facet vertex outside the ground set")
        for a, b in itertools.combinations(fl, 2):
            if a <= b or b <= a:
                raise ValueError("facets must be inclusion-incomparable")
        if len(set(fl)) != len(fl):
            raise ValueError("duplicate facet")
        self._facets = tuple(sorted(fl, key=lambda f: (len(f), face_key(f))))

    @classmethod
    def from_facets(cls, facets: Iterable[frozenset], ground: Iterable[Label] | None = None):
        """Normalize an arbitrary generating family: dedupe and drop non-maximal sets."""
        fl = _prune_to_maximal(frozenset(f) for f in facets)
        if ground is None:
            ground = set().union(*fl) if fl else set()
        return cls(ground, fl)

    @classmethod
    def void(cls, ground: Iterable[Label] = ()):
        return cls(ground, [])

    @classmethod
    def irrelevant(cls, ground: Iterable[Label] = ()):
        return cls(ground, [frozenset()])

    @property
    def ground(self) -> tuple[Label, ...]:
        return self._ground

    @property
    def facets(self) -> tuple[frozenset, ...]:
        return self._facets

    @property
    def is_void(self) -> bool:
        return not self._facets

    @property
    def is_irrelevant(self) -> bool:
        return self._facets == (frozenset(),)

    @property
    def dim(self) -> int:
        if self.is_void:
            raise ValueError("the void complex has no dimension")
        return max(len(f) for f in self._facets) - 1

    def vertices_in_use(self) -> tuple[Label, ...]:
        if self.is_void:
            return ()
        return sort_labels(set().union(*self._facets))

    def has_face(self, face: Iterable[Label]) -> bool:
        f = frozenset(face)
        return any(f <= facet for facet in self._facets)

    def faces(self, face_cap: int | None = DEFAULT_FACE_CAP) -> list[frozenset]:
        """All faces by downward closure, deduplicated, sorted by (size, key)."""
        seen: set[frozenset] = set()
        stack = list(self._facets)
        seen.update(stack)
        while stack:
            f = stack.pop()
            for v in f:
                sub = f - {v}
                if sub not in seen:
                    seen.add(sub)
                    if face_cap is not None and len(seen) > face_cap:
                        raise SizeCapError(f"face count exceeds cap {face_cap}")
                    stack.append(sub)
        return sorted(seen, key=lambda f: (len(f), face_key(f)))

    def face_count(self, face_cap: int | None = DEFAULT_FACE_CAP) -> int:
        return len(self.faces(face_cap))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._ground == other._ground and set(self._facets) == set(other._facets)

    def __hash__(self) -> int:
        return hash((self._ground, frozenset(self._facets)))

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        if self.is_irrelevant:
            return "SimplicialComplex(irrelevant)"
        return f"SimplicialComplex({len(self._ground)} vertices, {len(self._facets)} facets, dim {self.dim})"


def link(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Faces disjoint from ``face`` whose union with it stays a face."""
    f = frozenset(face)
    if not cx.has_face(f):
        raise ValueError("link requires a face of the complex")
    carriers = [fac - f for fac in cx.facets if f <= fac]
    return SimplicialComplex.from_facets(carriers, ground=set(cx.ground) - f)


def deletion(cx: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Faces disjoint from ``face``, as a complex on the shrunken ground set."""
    f = frozenset(face)
    unknown = f - set(cx.ground)
    if unknown:
        raise ValueError(f"unknown vertices in deletion: {sort_labels(unknown)!r}")
    if cx.is_void:
        return SimplicialComplex.void(set(cx.ground) - f)
    return SimplicialComplex.from_facets(
        (fac - f for fac in cx.facets), ground=set(cx.ground) - f
    )


def is_pure(cx: SimplicialComplex) -> bool:
    """True iff all facets share one cardinality.  Undefined on the void complex."""
    if cx.is_void:
        raise ValueError("purity is undefined for the void complex")
    return len({len(f) for f in cx.facets}) == 1


def pure_skeleton(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    """The complex generated by all k-dimensional faces."""
    if cx.is_void:
        raise ValueError("the void complex has no skeleta")
    gens: set[frozenset] = set()
    for fac in cx.facets:
        if len(fac) >= k + 1:
            for comb in itertools.combinations(sorted(fac, key=label_key), k + 1):
                gens.add(frozenset(comb))
    if not gens and k >= 0:
        raise ValueError(f"no faces of dimension {k}")
    return SimplicialComplex(cx.ground, sorted(gens, key=face_key))


def complex_components(cx: SimplicialComplex) -> int:
    """Number of connected components (vertices joined through shared facets)."""
    verts = cx.vertices_in_use()
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for fac in cx.facets:
        it = iter(sorted(fac, key=label_key))
        first = next(it, None)
        if first is None:
            continue
        r = find(first)
        for w in it:
            parent[find(w)] = r
    return len({find(v) for v in verts})


# -- reduced homology ---------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Ranks of reduced homology as vector spaces over a fixed field."""

    field: str
    ranks: dict[int, int]

    def rank(self, dim: int) -> int:
        return self.ranks.get(dim, 0)

    def is_acyclic(self) -> bool:
        return not any(self.ranks.values())

    def reduced_euler(self) -> int:
        return sum((-1) ** d * r for d, r in self.ranks.items())


def _rank_gf2(columns: list[int]) -> int:
    """Rank of a GF(2) matrix given as column bitmasks (xor basis)."""
    basis: dict[int, int] = {}
    rank = 0
    for vec in columns:
        while vec:
            top = vec.bit_length() - 1
            other = basis.get(top)
            if other is None:
                basis[top] = vec
                rank += 1
                break
            vec ^= other
    return rank


def _rank_rational(entries: dict[tuple[int, int], int], shape: tuple[int, int]) -> int:
    """Exact rank over Q via sympy's sparse domain matrices."""
    if not entries or 0 in shape:
        return 0
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    rows: dict[int, dict[int, Any]] = {}
    for (r, c), val in entries.items():
        rows.setdefault(r, {})[c] = QQ(val)
    return DomainMatrix(rows, shape, QQ).rank()


def _check_field(field: str) -> str:
    if field not in ("gf2", "q"):
        raise ValueError(f"unsupported field {field!r}; use 'gf2' or 'q'")
    return field


def reduced_homology(
    cx: SimplicialComplex, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> HomologyProfile:
    """Reduced homology ranks via exact boundary-matrix ranks.

    The chain complex is augmented: the empty face spans dimension -1 and
    every vertex maps to it, so ranks follow the reduced convention.
    """
    _check_field(field)
    if cx.is_void:
        raise ValueError("the void complex has no homology")
    by_dim: dict[int, list[frozenset]] = {}
    for f in cx.faces(face_cap):
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = cx.dim
    index: dict[int, dict[frozenset, int]] = {
        d: {f: i for i, f in enumerate(fl)} for d, fl in by_dim.items()
    }

    def boundary_rank(d: int) -> int:
        """Rank of the boundary map from dimension d to d - 1."""
        if d <= -1 or d > top or d - 1 not in by_dim:
            return 0
        lower = index[d - 1]
        if field == "gf2":
            cols = []
            for f in by_dim[d]:
                mask = 0
                for v in f:
                    mask |= 1 << lower[f - {v}]
                cols.append(mask)
            return _rank_gf2(cols)
        entries: dict[tuple[int, int], int] = {}
        for j, f in enumerate(by_dim[d]):
            for s, v in enumerate(sorted(f, key=label_key)):
                entries[(lower[f - {v}], j)] = (-1) ** s
        return _rank_rational(entries, (len(by_dim[d - 1]), len(by_dim[d])))

    rank_of = {d: boundary_rank(d) for d in range(0, top + 1)}
    ranks: dict[int, int] = {}
    for d in range(-1, top + 1):
        cells = len(by_dim.get(d, ()))
        r = cells - rank_of.get(d, 0) - rank_of.get(d + 1, 0)
        if r:
            ranks[d] = r
    return HomologyProfile(field=field, ranks=ranks)


# -- Cohen-Macaulayness (Reisner) ---------------------------------------------


def _nonpure_reisner_witness(cx: SimplicialComplex) -> frozenset | None:
    """For a non-pure complex, a face whose link is disconnected of dim >= 1.

    Walk to an inclusion-maximal face with a non-pure link; such a link has
    all vertex links pure, which forces it to be disconnected, so reduced
    homology is nonzero in dimension 0 < dim(link).
    """
    face: frozenset = frozenset()
    current = cx
    while True:
        for x in current.vertices_in_use():
            lk = link(current, {x})
            if not lk.is_void and not is_pure(lk):
                face = face | {x}
                current = lk
                break
        else:
            break
    if complex_components(current) >= 2:
        return face
    return None


def is_cohen_macaulay(
    cx: SimplicialComplex, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> Verdict:
    """Reisner's criterion: every face's link is homologically trivial
    below its dimension.  The failure witness is a face and a dimension
    with nonvanishing reduced homology.
    """
    _check_field(field)
    if cx.is_void:
        raise ValueError("Cohen-Macaulayness is undefined for the void complex")
    if not is_pure(cx):
        witness_face = _nonpure_reisner_witness(cx)
        if witness_face is not None:
            lk = link(cx, witness_face)
            rank0 = complex_components(lk) - 1
            return Verdict(
                holds=False,
                witness={"face": sort_labels(witness_face), "dim": 0, "rank": rank0},
                detail="link is disconnected below its dimension",
                field=field,
            )
        # unreachable for non-pure complexes; fall through to the full scan
    for f in cx.faces(face_cap):
        lk = link(cx, f)
        if lk.dim <= 0:
            continue
        profile = reduced_homology(lk, field, face_cap)
        for d in range(-1, lk.dim):
            if profile.rank(d):
                return Verdict(
                    holds=False,
                    witness={"face": sort_labels(f), "dim": d, "rank": profile.rank(d)},
                    detail="link has homology below its dimension",
                    field=field,
                )
    return Verdict(holds=True, field=field)


def is_sequentially_cohen_macaulay(
    cx: SimplicialComplex, field: str = "gf2", face_cap: int = DEFAULT_FACE_CAP
) -> Verdict:
    """Skeleton criterion: every pure i-skeleton is Cohen-Macaulay."""
    _check_field(field)
    if cx.is_void:
        raise ValueError("sequential Cohen-Macaulayness is undefined for the void complex")
    for i in range(0, cx.dim + 1):
        sub = pure_skeleton(cx, i)
        verdict = is_cohen_macaulay(sub, field, face_cap)
        if not verdict.holds:
            return Verdict(
                holds=False,
                witness={"skeleton_dim": i, "reisner": verdict.witness},
                detail=f"pure {i}-skeleton fails the link condition",
                field=field,
            )
    return Verdict(holds=True, field=field)


# -- shellability ---------------------------------------------------------------


def _may_follow(f: frozenset, prefix: list[frozenset]) -> bool:
    """Can ``f`` extend a partial shelling ``prefix``?

    Pairwise form of the gluing condition: for every earlier facet g there
    is an earlier facet l with g & f <= l & f and |l & f| = |f| - 1.
    """
    inters = {g & f for g in prefix}
    need = len(f) - 1
    bigs = [i for i in inters if len(i) == need]
    if not bigs:
        return False
    for gf in inters:
        if not any(gf <= b for b in bigs):
            return False
    return True


def is_shellable(
    cx: SimplicialComplex,
    facet_cap: int = DEFAULT_FACET_CAP,
    _descending: bool = True,
) -> Verdict:
    """Search for a shelling order (nonpure sense).

    Backtracks over facet prefixes, memoizing refuted prefix sets (whether a
    prefix extends depends only on its underlying set).  By the standard
    rearrangement property of shellable complexes the search may restrict to
    weakly decreasing facet dimensions; ``_descending=False`` disables the
    restriction for cross-checks.
    """
    if cx.is_void:
        raise ValueError("shellability is undefined for the void complex")
    facets = sorted(cx.facets, key=lambda f: (-len(f), face_key(f)))
    t = len(facets)
    if t > facet_cap:
        raise SizeCapError(f"{t} facets exceeds the shellability cap {facet_cap}")
    if t == 1:
        return Verdict(holds=True, certificate=tuple(facets))
    refuted: set[frozenset] = set()
    max_size = len(facets[0])

    def search(order: list[frozenset], used: frozenset) -> tuple[frozenset, ...] | None:
        if len(order) == t:
            return tuple(order)
        if used in refuted:
            return None
        floor = len(order[-1]) if _descending else 0
        for f in facets:
            if f in used:
                continue
            if _descending and len(f) > floor:
                continue
            if _may_follow(f, order):
                result = search(order + [f], used | {f})
                if result is not None:
                    return result
        refuted.add(used)
        return None

    for first in facets:
        if _descending and len(first) < max_size:
            break
        result = search([first], frozenset([first]))
        if result is not None:
            return Verdict(holds=True, certificate=result)
    return Verdict(holds=False, detail="no facet ordering satisfies the gluing condition")


# -- vertex decomposability (complex level) -------------------------------------


@dataclass(frozen=True)
class VdComplexNode:
    """One step of a vertex-decomposition: shed ``vertex``, recurse both ways."""

    facets: tuple[frozenset, ...]
    vertex: Label | None = None
    link_child: "VdComplexNode | None" = None
    del_child: "VdComplexNode | None" = None

    @property
    def is_simplex(self) -> bool:
        return self.vertex is None


def _facets_link(facets: tuple[frozenset, ...], x: Label) -> tuple[frozenset, ...]:
    return tuple(_prune_to_maximal(f - {x} for f in facets if x in f))


def _facets_deletion(facets: tuple[frozenset, ...], x: Label) -> tuple[frozenset, ...]:
    return tuple(_prune_to_maximal(f - {x} if x in f else f for f in facets))


def is_vd_complex(cx: SimplicialComplex, face_cap: int = DEFAULT_FACE_CAP) -> Verdict:
    """Recursive vertex decomposability of a complex.

    A complex is vertex decomposable when it is a simplex (one facet) or
    some vertex has a vertex-decomposable link and deletion with no face of
    the link being a facet of the deletion.  The certificate is the
    recursion tree of shed vertices.
    """
    if cx.is_void:
        raise ValueError("vertex decomposability is undefined for the void complex")
    cx.face_count(face_cap)
    memo: dict[frozenset, VdComplexNode | None] = {}

    def rec(facets: tuple[frozenset, ...]) -> VdComplexNode | None:
        key = frozenset(facets)
        if key in memo:
            return memo[key]
        if len(facets) == 1:
            node = VdComplexNode(facets=facets)
            memo[key] = node
            return node
        memo[key] = None
        for x in sort_labels(set().union(*facets)):
            lk = _facets_link(facets, x)
            dl = _facets_deletion(facets, x)
            if any(any(g <= lf for lf in lk) for g in dl):
                continue  # a facet of the deletion survives as a face of the link
            link_node = rec(lk)
            if link_node is None:
                continue
            del_node = rec(dl)
            if del_node is None:
                continue
            node = VdComplexNode(facets=facets, vertex=x, link_child=link_node, del_child=del_node)
            memo[key] = node
            return node
        return None

    tree = rec(cx.facets)
    if tree is None:
        return Verdict(holds=False, detail="no shedding vertex at some recursion node")
    return Verdict(holds=True, certificate=tree)


# -- facet-list text format ------------------------------------------------------
#
# One facet per line, vertices whitespace-separated; `!void` and
# `!irrelevant` sentinel lines denote the two degenerate complexes.


def parse_facet_list(text: str) -> SimplicialComplex:
    facets: list[frozenset] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "!void":
            return SimplicialComplex.void()
        if line == "!irrelevant":
            return SimplicialComplex.irrelevant()
        facets.append(frozenset(line.split()))
    if not facets:
        raise FormatError("facet list is empty; use !void or !irrelevant for degenerate complexes")
    return SimplicialComplex.from_facets(facets)


def format_facet_list(cx: SimplicialComplex) -> str:
    if cx.is_void:
        return "!void\n"
    if cx.is_irrelevant:
        return "!irrelevant\n"
    lines = [" ".join(format_label(v) for v in sort_labels(f)) for f in cx.facets]
    return "\n".join(lines) + "\n"
