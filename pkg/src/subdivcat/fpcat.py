"""Finitely presented relative categories and colimits of relative posets.

A :class:`CatPresentation` is a graph with path relations and a set of edges
flagged as weak equivalences.  ``materialize`` turns it into a finite
:class:`RelativeCategory` whenever the quotient graph has no directed cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .relcat import FiniteCategory, RelativeCategory, RelativePoset
from .subdivision import PosetMap


@dataclass(frozen=True)
class Relation:
    """Two parallel paths ``src -> tgt``; paths are edge tuples in order of travel."""

    src: int
    tgt: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]


@dataclass(frozen=True)
class CatPresentation:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    relations: tuple[Relation, ...] = ()
    we: frozenset[int] = frozenset()
    vertex_labels: tuple | None = field(default=None, compare=False)

    def path_ends(self, src: int, path: Sequence[int]) -> int:
        v = src
        for e in path:
            if self.edges[e][0] != v:
                raise ValueError(f"path {tuple(path)} is not composable at edge {e}")
            v = self.edges[e][1]
        return v

    def problems(self) -> list[str]:
        out = []
        for e, (s, t) in enumerate(self.edges):
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                out.append(f"edge {e} has invalid endpoints {(s, t)}")
        if out:
            return out
        for r in self.relations:
            for side in (r.lhs, r.rhs):
                try:
                    end = self.path_ends(r.src, side)
                except (ValueError, IndexError) as exc:
                    out.append(str(exc))
                    continue
                if end != r.tgt:
                    out.append(f"relation {r} is not parallel")
        for e in sorted(self.we):
            if not 0 <= e < len(self.edges):
                out.append(f"we edge {e} does not exist")
        return out


@dataclass(frozen=True)
class CyclicityReport:
    """The presentation has a directed cycle through nonidentity edges."""

    cycle: tuple[int, ...]  # edge ids


class PathBoundTooSmall(ValueError):
    pass


# --------------------------------------------------------------------------
# colimits of relative posets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    """A finite diagram of relative posets; arrows are ``(source piece, target piece, map)``."""

    pieces: tuple[RelativePoset, ...]
    arrows: tuple[tuple[int, int, PosetMap], ...] = ()


@dataclass(frozen=True)
class ColimitPresentation:
    presentation: CatPresentation
    legs: tuple[tuple[int, ...], ...]  # legs[piece][element position] -> vertex
    cover_edge: tuple[dict, ...]  # cover_edge[piece][(a, b)] -> edge id


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _canonical_paths(P: RelativePoset) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
    """For every ``a <= b`` a fixed cover path from ``a`` to ``b``: step to the smallest cover below ``b``."""
    succ: dict[int, list[int]] = {x: [] for x in P.elements}
    for a, b in P.covers:
        succ[a].append(b)
    paths: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def path(a: int, b: int):
        if (a, b) not in paths:
            if a == b:
                paths[(a, b)] = ()
            else:
                c = min(c for c in succ[a] if (c, b) in P.leq)
                paths[(a, b)] = ((a, c),) + path(c, b)
        return paths[(a, b)]

    for a, b in P.leq:
        path(a, b)
    return paths


def colimit_presentation(diagram: Diagram) -> ColimitPresentation:
    """Present the colimit in relative categories of a diagram of relative posets.

    Objects of all pieces are identified along the arrows (union-find).  The
    edges are the Hasse covers of every piece.  Relations make each piece
    commute and identify the image of every cover under every arrow with the
    corresponding path in the target piece.
    """
    pieces = diagram.pieces
    offsets, total = [], 0
    for P in pieces:
        offsets.append(total)
        total += len(P.elements)
    uf = _UnionFind(total)
    for s, t, f in diagram.arrows:
        S = pieces[s]
        for i, x in enumerate(S.elements):
            uf.union(offsets[s] + i, offsets[t] + pieces[t].index[f(x)])
    roots = sorted({uf.find(i) for i in range(total)})
    vertex_of = {r: v for v, r in enumerate(roots)}
    legs = tuple(
        tuple(vertex_of[uf.find(offsets[p] + i)] for i in range(len(P.elements))) for p, P in enumerate(pieces)
    )
    labels = [None] * len(roots)
    for p, P in enumerate(pieces):
        for i, x in enumerate(P.elements):
            v = legs[p][i]
            if labels[v] is None:
                labels[v] = (p, P.labels[i] if P.labels is not None else x)

    edges: list[tuple[int, int]] = []
    we: set[int] = set()
    cover_edge: list[dict] = []
    for p, P in enumerate(pieces):
        table = {}
        for a, b in P.covers:
            table[(a, b)] = len(edges)
            edges.append((legs[p][P.index[a]], legs[p][P.index[b]]))
            if (a, b) in P.we:
                we.add(table[(a, b)])
        cover_edge.append(table)

    relations: set[Relation] = set()

    def add(src: int, tgt: int, lhs: tuple[int, ...], rhs: tuple[int, ...]) -> None:
        if lhs != rhs:
            relations.add(Relation(src, tgt, *sorted((lhs, rhs))))

    canon = [_canonical_paths(P) for P in pieces]
    for p, P in enumerate(pieces):
        ids = cover_edge[p]
        as_edges = {ab: tuple(ids[c] for c in path) for ab, path in canon[p].items()}
        for a, b in P.covers:
            for z in sorted(P.up[b]):
                add(
                    legs[p][P.index[a]],
                    legs[p][P.index[z]],
                    (ids[(a, b)],) + as_edges[(b, z)],
                    as_edges[(a, z)],
                )
    for s, t, f in diagram.arrows:
        ids_s, ids_t = cover_edge[s], cover_edge[t]
        for a, b in pieces[s].covers:
            fa, fb = f(a), f(b)
            image = tuple(ids_t[c] for c in canon[t][(fa, fb)])
            add(legs[s][pieces[s].index[a]], legs[s][pieces[s].index[b]], (ids_s[(a, b)],), image)
    ordered = tuple(sorted(relations, key=lambda r: (r.src, r.tgt, len(r.lhs) + len(r.rhs), r.lhs, r.rhs)))
    pres = CatPresentation(len(roots), tuple(edges), ordered, frozenset(we), tuple(labels))
    return ColimitPresentation(pres, legs, tuple(cover_edge))


def presentation_of(P: RelativePoset) -> CatPresentation:
    return colimit_presentation(Diagram((P,))).presentation


# --------------------------------------------------------------------------
# materialization
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Materialized:
    category: RelativeCategory
    # representative edge path of each morphism, and vertex -> object
    paths: tuple[tuple[int, ...], ...]
    edge_morphism: tuple[int | None, ...]  # edge -> morphism id (identity edges included)

    def morphism_of_path(self, src: int, path: Sequence[int]) -> int:
        C = self.category.base
        m = C.identity[src]
        for e in path:
            m = C.compose[(self.edge_morphism[e], m)]
        return m


def _simplify_edges(p: CatPresentation):
    """Merge edges related to single edges and drop edges related to identities.

    Returns ``(rep, identity_edges, relations)`` with relations rewritten in
    terms of representative edges.
    """
    uf = _UnionFind(len(p.edges))
    identity: set[int] = set()
    rels = [(r.src, r.lhs, r.rhs) for r in p.relations]
    changed = True
    while changed:
        changed = False
        out = []
        for src, lhs, rhs in rels:
            lhs = tuple(uf.find(e) for e in lhs if uf.find(e) not in identity)
            rhs = tuple(uf.find(e) for e in rhs if uf.find(e) not in identity)
            if lhs == rhs:
                continue
            if len(lhs) == 1 and len(rhs) == 1:
                uf.union(lhs[0], rhs[0])
                changed = True
                continue
            if len(lhs) + len(rhs) == 1:
                identity.add((lhs or rhs)[0])
                changed = True
                continue
            out.append((src, lhs, rhs))
        rels = out
    # an edge whose class contains an identity edge is an identity
    identity = {e for e in range(len(p.edges)) if uf.find(e) in identity}
    rep = [uf.find(e) for e in range(len(p.edges))]
    return rep, identity, rels


def _find_cycle(n: int, edges: Sequence[tuple[int, int, int]]) -> tuple[int, ...] | None:
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for e, s, t in edges:
        out[s].append((t, e))
    state = [0] * n  # 0 new, 1 on stack, 2 done
    stack_edges: list[int] = []
    stack_vertices: list[int] = []

    def dfs(v: int) -> tuple[int, ...] | None:
        state[v] = 1
        stack_vertices.append(v)
        for w, e in out[v]:
            if state[w] == 1:
                start = stack_vertices.index(w)
                return tuple(stack_edges[start:]) + (e,)
            if state[w] == 0:
                stack_edges.append(e)
                found = dfs(w)
                if found:
                    return found
                stack_edges.pop()
        stack_vertices.pop()
        state[v] = 2
        return None

    for v in range(n):
        if state[v] == 0:
            found = dfs(v)
            if found:
                return found
    return None


def materialize(p: CatPresentation, path_len_bound: int | None = None) -> Materialized | CyclicityReport:
    """Build the finite relative category presented by ``p``.

    Returns a :class:`CyclicityReport` when the graph of nonidentity edges has
    a directed cycle.  ``path_len_bound`` (default: number of vertices) must
    be at least the length of the longest path, otherwise
    :class:`PathBoundTooSmall` is raised.  The weak equivalences are the
    morphisms equal to a composite of ``we`` edges.
    """
    bad = p.problems()
    if bad:
        raise ValueError("; ".join(bad))
    rep, identity_edges, rels = _simplify_edges(p)
    live = sorted({rep[e] for e in range(len(p.edges)) if e not in identity_edges})
    cycle = _find_cycle(p.n_vertices, [(e, *p.edges[e]) for e in live])
    if cycle is not None:
        return CyclicityReport(cycle)

    n = p.n_vertices
    out: dict[int, list[int]] = {v: [] for v in range(n)}
    for e in live:
        out[p.edges[e][0]].append(e)
    # all paths, by depth-first extension from each vertex
    paths: list[tuple[int, int, tuple[int, ...]]] = []
    longest = 0
    for v in range(n):
        todo = [(v, ())]
        while todo:
            u, path = todo.pop()
            paths.append((v, u, path))
            longest = max(longest, len(path))
            for e in out[u]:
                todo.append((p.edges[e][1], path + (e,)))
    bound = n if path_len_bound is None else path_len_bound
    if longest > bound:
        raise PathBoundTooSmall(f"longest path has length {longest} > bound {bound}")
    paths.sort(key=lambda t: (t[0], t[1], len(t[2]), t[2]))
    pid = {(s, path): i for i, (s, _, path) in enumerate(paths)}
    into: dict[int, list[tuple[int, tuple[int, ...]]]] = {v: [] for v in range(n)}
    outof: dict[int, list[tuple[int, tuple[int, ...]]]] = {v: [] for v in range(n)}
    for s, t, path in paths:
        into[t].append((s, path))
        outof[s].append((t, path))

    # congruence = equivalence closure of whiskered relations u.l.v ~ u.r.v
    uf = _UnionFind(len(paths))
    for src, lhs, rhs in rels:
        tgt = p.path_ends(src, lhs)
        for s, u in into[src]:
            for _, w in outof[tgt]:
                uf.union(pid[(s, u + lhs + w)], pid[(s, u + rhs + w)])

    classes = sorted({uf.find(i) for i in range(len(paths))}, key=lambda r: (paths[r][0], paths[r][1], len(paths[r][2]), paths[r][2]))
    mor_of_root = {r: m for m, r in enumerate(classes)}
    mor_of_path = [mor_of_root[uf.find(i)] for i in range(len(paths))]
    morphisms = tuple((paths[r][0], paths[r][1]) for r in classes)
    identity = tuple(mor_of_path[pid[(v, ())]] for v in range(n))
    reps = tuple(paths[r][2] for r in classes)
    compose = {}
    for f, (a, b) in enumerate(morphisms):
        for t, w in outof[b]:
            g = mor_of_path[pid[(b, w)]]
            compose[(g, f)] = mor_of_path[pid[(a, reps[f] + w)]]
    we_edges = {rep[e] for e in p.we if e not in identity_edges}
    we = {mor_of_path[i] for i, (_, _, path) in enumerate(paths) if all(e in we_edges for e in path)}
    edge_morphism = tuple(
        identity[p.edges[e][0]] if e in identity_edges else mor_of_path[pid[(p.edges[e][0], (rep[e],))]]
        for e in range(len(p.edges))
    )
    C = FiniteCategory(n, morphisms, identity, compose, p.vertex_labels)
    return Materialized(RelativeCategory(C, frozenset(we)), reps, edge_morphism)
