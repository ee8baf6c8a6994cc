"""Finite simplicial sets presented by nondegenerate generators.

A simplex is a :class:`Simplex` ``(op, dim, gen)``: the degeneracy of the
generator ``gen`` (of dimension ``dim``) along the surjection ``op: [m] -> [dim]``
written as its value tuple.  This is the Eilenberg-Zilber normal form, and
``op`` is the identity exactly when the simplex is nondegenerate.

Simplicial operators act on the right through monotone maps: ``apply(x, alpha)``
with ``alpha: [p] -> [m]`` is ``alpha^* x``.  Face ``d_i`` is the coface
``[m-1] -> [m]`` that skips ``i`` and degeneracy ``s_j`` is the codegeneracy
``[m+1] -> [m]`` that hits ``j`` twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .relcat import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    FiniteCategory,
    Poset,
    Violation,
    chains_poset,
    linear_order,
    to_category,
)
from .subdivision import codegeneracy, coface


class Simplex(NamedTuple):
    op: tuple[int, ...]
    dim: int
    gen: int

    @property
    def degree(self) -> int:
        return len(self.op) - 1

    @property
    def nondegenerate(self) -> bool:
        return self.degree == self.dim


def identity_op(k: int) -> tuple[int, ...]:
    return tuple(range(k + 1))


def generator(dim: int, gen: int) -> Simplex:
    return Simplex(identity_op(dim), dim, gen)


def degeneracy_word(op: Sequence[int]) -> tuple[int, ...]:
    """Indices ``j`` with ``op[j] == op[j+1]``: the degeneracy word of a surjection."""
    return tuple(j for j in range(len(op) - 1) if op[j] == op[j + 1])


def op_from_word(word: Sequence[int], m: int) -> tuple[int, ...]:
    """Inverse of :func:`degeneracy_word` for a surjection out of ``[m]``."""
    repeated = set(word)
    out, v = [0], 0
    for j in range(m):
        if j not in repeated:
            v += 1
        out.append(v)
    return tuple(out)


class NotLoopFree(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteSimplicialSet:
    """``faces[k][g][i]`` is the normal form of ``d_i`` of generator ``g`` of dimension ``k``."""

    counts: tuple[int, ...]
    faces: tuple[tuple[tuple[Simplex, ...], ...], ...]
    labels: tuple | None = None  # per dimension, optional generator names

    @property
    def dimension(self) -> int:
        return len(self.counts) - 1

    def generators(self, k: int) -> range:
        return range(self.counts[k]) if k < len(self.counts) else range(0)

    def face(self, k: int, g: int, i: int) -> Simplex:
        return self.faces[k][g][i]

    @cached_property
    def _restrict_cache(self) -> dict:
        return {}

    def restrict(self, dim: int, gen: int, iota: tuple[int, ...]) -> Simplex:
        """``iota^*`` of a generator for an injective ``iota: [j] -> [dim]``."""
        if len(iota) == dim + 1:
            return generator(dim, gen)
        key = (dim, gen, iota)
        cache = self._restrict_cache
        if key not in cache:
            i = next(k for k in range(dim + 1) if k not in iota)
            rest = tuple(v if v < i else v - 1 for v in iota)
            cache[key] = self.apply(self.faces[dim][gen][i], rest)
        return cache[key]

    def apply(self, x: Simplex, alpha: Sequence[int]) -> Simplex:
        """``alpha^* x`` for a monotone ``alpha: [p] -> [degree of x]``."""
        comp = [x.op[a] for a in alpha]
        image = sorted(set(comp))
        pos = {v: i for i, v in enumerate(image)}
        y = self.restrict(x.dim, x.gen, tuple(image))
        return Simplex(tuple(y.op[pos[v]] for v in comp), y.dim, y.gen)

    def d(self, x: Simplex, i: int) -> Simplex:
        return self.apply(x, coface(x.degree, i))

    def s(self, x: Simplex, j: int) -> Simplex:
        return self.apply(x, codegeneracy(x.degree, j))

    def simplices(self, m: int) -> list[Simplex]:
        """Every ``m``-simplex (degenerate ones included), in canonical order."""
        out = []
        for k in range(min(m, self.dimension) + 1):
            for word in combinations(range(m), m - k):
                op = op_from_word(word, m)
                out.extend(Simplex(op, k, g) for g in self.generators(k))
        out.sort(key=lambda x: (x.dim, x.op, x.gen))
        return out

    @cached_property
    def label_index(self) -> list[dict]:
        return [{lab: g for g, lab in enumerate(labs)} for labs in self.labels]

    def n_generators(self) -> int:
        return sum(self.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSimplicialSet):
            return NotImplemented
        return self.counts == other.counts and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.counts, self.faces))


def check_simplicial_set(K: FiniteSimplicialSet, dim_bound: int | None = None) -> list[Violation]:
    """Check face targets and all simplicial identities on simplices up to ``dim_bound``."""
    out: list[Violation] = []
    for k, gens in enumerate(K.faces):
        if len(gens) != K.counts[k]:
            out.append(Violation("generator-count", (k,)))
        for g, fs in enumerate(gens):
            if len(fs) != (k + 1 if k > 0 else 0):
                out.append(Violation("face-count", (k, g)))
            for i, y in enumerate(fs):
                if y.degree != k - 1 or not 0 <= y.dim < len(K.counts) or not 0 <= y.gen < K.counts[y.dim]:
                    out.append(Violation("face-target", (k, g, i)))
                elif y.dim > y.degree or sorted(set(y.op)) != list(range(y.dim + 1)) or list(y.op) != sorted(y.op):
                    out.append(Violation("face-not-normal", (k, g, i)))
    if out:
        return out
    top = K.dimension + 1 if dim_bound is None else dim_bound
    for m in range(top + 1):
        for x in K.simplices(m):
            out.extend(_identity_violations(K, x, m))
    return out


def _identity_violations(K: FiniteSimplicialSet, x: Simplex, m: int) -> list[Violation]:
    out = []
    d, s = K.d, K.s
    if m >= 2:
        for j in range(m + 1):
            for i in range(j):
                if d(d(x, j), i) != d(d(x, i), j - 1):
                    out.append(Violation("d_i d_j", (x, i, j)))
    for j in range(m + 1):
        sx = s(x, j)
        for i in range(m + 2):
            lhs = d(sx, i)
            if i < j:
                rhs = s(d(x, i), j - 1)
            elif i in (j, j + 1):
                rhs = x
            else:
                rhs = s(d(x, i - 1), j)
            if lhs != rhs:
                out.append(Violation("d_i s_j", (x, i, j)))
        for i in range(j + 1):
            if s(s(x, j), i) != s(s(x, i), j + 1):
                out.append(Violation("s_i s_j", (x, i, j)))
    return out


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------


def from_vertex_simplices(simplices, labels_from_vertices: bool = True) -> FiniteSimplicialSet:
    """Simplicial set of a downward-closed family of vertex tuples (ordered complex)."""
    family = sorted(set(tuple(s) for s in simplices), key=lambda s: (len(s), s))
    top = max((len(s) for s in family), default=0) - 1
    by_dim = [[s for s in family if len(s) == k + 1] for k in range(top + 1)]
    index = [{s: g for g, s in enumerate(ss)} for ss in by_dim]
    faces = []
    for k, ss in enumerate(by_dim):
        row = []
        for sgm in ss:
            if k == 0:
                row.append(())
                continue
            row.append(tuple(generator(k - 1, index[k - 1][sgm[:i] + sgm[i + 1 :]]) for i in range(k + 1)))
        faces.append(tuple(row))
    labels = tuple(tuple(ss) for ss in by_dim) if labels_from_vertices else None
    return FiniteSimplicialSet(tuple(len(ss) for ss in by_dim), tuple(faces), labels)


def delta(n: int) -> FiniteSimplicialSet:
    """The standard ``n``-simplex: one generator per nonempty subset of ``[n]``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return from_vertex_simplices(c for k in range(1, n + 2) for c in combinations(range(n + 1), k))


def boundary(n: int) -> FiniteSimplicialSet:
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    return from_vertex_simplices(c for k in range(1, n + 1) for c in combinations(range(n + 1), k))


def horn(n: int, k: int) -> FiniteSimplicialSet:
    """The ``k``-th horn of ``delta(n)``: the boundary minus the face opposite ``k``."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"horn({n}, {k}) out of range")
    missing = tuple(v for v in range(n + 1) if v != k)
    return from_vertex_simplices(
        c for m in range(1, n + 1) for c in combinations(range(n + 1), m) if c != missing
    )


def check_loop_free(C: FiniteCategory) -> None:
    graph: dict[int, set[int]] = {x: set() for x in C.objects}
    for m, (s, t) in enumerate(C.morphisms):
        if m in C.identity_set:
            continue
        if s == t:
            raise NotLoopFree(f"nonidentity endomorphism {m} of object {s}")
        graph[t].add(s)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise NotLoopFree(f"directed cycle through objects {exc.args[1]}") from None


def nerve(C) -> FiniteSimplicialSet:
    """Nerve of a loop-free finite category (or of a poset's underlying category).

    Generators of dimension ``k`` are composable ``k``-tuples of nonidentity
    morphisms (listed first-to-last); dimension 0 generators are the objects.
    """
    C = to_category(C)
    check_loop_free(C)
    nonid = [m for m in range(len(C.morphisms)) if m not in C.identity_set]
    out_of: dict[int, list[int]] = {x: [] for x in C.objects}
    for m in nonid:
        out_of[C.src(m)].append(m)
    by_dim: list[list[tuple[int, ...]]] = [[(x,) for x in C.objects]]
    current = [(m,) for m in nonid]
    while current:
        by_dim.append(sorted(current))
        current = [p + (m,) for p in current for m in out_of[C.tgt(p[-1])]]
    index = [{p: g for g, p in enumerate(ps)} for ps in by_dim]
    faces = [tuple(() for _ in by_dim[0])]
    for k in range(1, len(by_dim)):
        row = []
        for p in by_dim[k]:
            fs = []
            for i in range(k + 1):
                if k == 1:
                    q = (C.tgt(p[0]),) if i == 0 else (C.src(p[0]),)
                elif i == 0:
                    q = p[1:]
                elif i == k:
                    q = p[:-1]
                else:
                    q = p[: i - 1] + (C.compose[(p[i], p[i - 1])],) + p[i + 1 :]
                fs.append(generator(k - 1, index[k - 1][q]))
            row.append(tuple(fs))
        faces.append(tuple(row))
    return FiniteSimplicialSet(tuple(len(ps) for ps in by_dim), tuple(faces), tuple(tuple(ps) for ps in by_dim))


def nerve_simplex(C: FiniteCategory, K: FiniteSimplicialSet, morphisms: Sequence[int], base: int | None = None) -> Simplex:
    """Normal form in ``K = nerve(C)`` of the simplex given by a composable string.

    ``base`` names the object when ``morphisms`` is empty.
    """
    if not morphisms:
        return generator(0, base)
    op, kept, level = [0], [], 0
    for m in morphisms:
        if m not in C.identity_set:
            kept.append(m)
            level += 1
        op.append(level)
    if not kept:
        return Simplex(tuple(op), 0, C.src(morphisms[0]))
    return Simplex(tuple(op), len(kept), K.label_index[len(kept)][tuple(kept)])


def sd_poset_nerve(P: Poset) -> FiniteSimplicialSet:
    """Barycentric subdivision of the nerve of ``P``: the nerve of its chain poset."""
    return nerve(chains_poset(P))


# --------------------------------------------------------------------------
# maps
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    """``images[k][g]`` is the image of generator ``g`` of dimension ``k``."""

    images: tuple[tuple[Simplex, ...], ...]

    def __call__(self, K: FiniteSimplicialSet, Y: FiniteSimplicialSet, x: Simplex) -> Simplex:
        return Y.apply(self.images[x.dim][x.gen], x.op)


def check_simplicial_map(f: SimplicialMap, K: FiniteSimplicialSet, Y: FiniteSimplicialSet) -> list[Violation]:
    out = []
    for k in range(len(K.counts)):
        for g in K.generators(k):
            y = f.images[k][g]
            if y.degree != k:
                out.append(Violation("map-dimension", (k, g)))
                continue
            for i in range(k + 1 if k else 0):
                if Y.d(y, i) != f(K, Y, K.face(k, g, i)):
                    out.append(Violation("map-face", (k, g, i)))
    return out


@dataclass
class _FaceIndex:
    """Simplices of a target grouped by their tuple of faces."""

    Y: FiniteSimplicialSet
    by_faces: dict = field(default_factory=dict)

    def lookup(self, m: int, faces: tuple[Simplex, ...]) -> list[Simplex]:
        if m not in self.by_faces:
            table: dict = {}
            for y in self.Y.simplices(m):
                key = tuple(self.Y.d(y, i) for i in range(m + 1))
                table.setdefault(key, []).append(y)
            self.by_faces[m] = table
        return self.by_faces[m].get(faces, [])


def _map_plan(K: FiniteSimplicialSet, roots: Sequence[int] = ()) -> list[tuple[int, int]]:
    """Vertices in a connectivity-greedy order, each higher generator right after its faces."""
    deps: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for k in range(1, len(K.counts)):
        for g in K.generators(k):
            deps[(k, g)] = {(y.dim, y.gen) for y in K.faces[k][g]}
    vertex_deps: dict[tuple[int, int], set[int]] = {}

    def verts(node):
        if node[0] == 0:
            return {node[1]}
        if node not in vertex_deps:
            vertex_deps[node] = set().union(*(verts(d) for d in deps[node]))
        return vertex_deps[node]

    nbrs: dict[int, set[int]] = {v: set() for v in K.generators(0)}
    for node in deps:
        vs = verts(node)
        for v in vs:
            nbrs[v] |= vs - {v}
    order: list[int] = list(roots)
    placed: set[int] = set(order)
    n_vertices = K.counts[0] if K.counts else 0
    while len(order) < n_vertices:
        best = max(
            (v for v in K.generators(0) if v not in placed),
            key=lambda v: (len(nbrs[v] & placed), len(nbrs[v]), -v),
        )
        order.append(best)
        placed.add(best)
    pos = {v: i for i, v in enumerate(order)}
    buckets: dict[int, list] = {}
    for node in sorted(deps):
        buckets.setdefault(max(pos[v] for v in verts(node)), []).append(node)
    plan = []
    for i, v in enumerate(order):
        plan.append((0, v))
        plan.extend(buckets.get(i, ()))
    return plan


def enumerate_simplicial_maps(
    K: FiniteSimplicialSet,
    Y: FiniteSimplicialSet,
    dim_bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[SimplicialMap]:
    """Every simplicial map ``K -> Y``, sorted canonically.

    Vertices branch over the vertices of ``Y``; each higher generator is
    looked up from the images of its faces, so only consistent branches grow.
    """
    if dim_bound is not None and K.dimension > dim_bound:
        raise ValueError(f"source has dimension {K.dimension} > bound {dim_bound}")
    plan = _map_plan(K)
    index = _FaceIndex(Y)
    images: dict[tuple[int, int], Simplex] = {}
    results: list[SimplicialMap] = []
    nodes = 0
    vertices = [generator(0, v) for v in Y.generators(0)]

    def rec(step: int) -> None:
        nonlocal nodes
        if step == len(plan):
            results.append(
                SimplicialMap(tuple(tuple(images[(k, g)] for g in K.generators(k)) for k in range(len(K.counts))))
            )
            return
        k, g = plan[step]
        if k == 0:
            cands = vertices
        else:
            want = tuple(Y.apply(images[(y.dim, y.gen)], y.op) for y in K.faces[k][g])
            cands = index.lookup(k, want)
        for c in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            images[(k, g)] = c
            rec(step + 1)
        images.pop((k, g), None)

    rec(0)
    results.sort(key=lambda f: f.images)
    return results


def ex(Y: FiniteSimplicialSet, n: int, budget: int = DEFAULT_BUDGET) -> list[SimplicialMap]:
    """The ``n``-simplices of ``Ex Y``: maps ``Sd delta(n) -> Y``."""
    return enumerate_simplicial_maps(sd_poset_nerve(linear_order(n)), Y, budget=budget)


def ex2(Y: FiniteSimplicialSet, n: int, budget: int = DEFAULT_BUDGET) -> list[SimplicialMap]:
    """The ``n``-simplices of ``Ex^2 Y``: maps ``Sd^2 delta(n) -> Y``."""
    return enumerate_simplicial_maps(sd2_simplex(n), Y, budget=budget)


def sd2_simplex(n: int) -> FiniteSimplicialSet:
    return sd_poset_nerve(chains_poset(linear_order(n)))


# --------------------------------------------------------------------------
# vectorized map tables
# --------------------------------------------------------------------------


class SimplicialMapTable:
    """Enumerate simplicial maps ``K -> Y`` as integer code arrays.

    Each ``m``-simplex of ``Y`` gets a code (its index in ``Y.simplices(m)``).
    A yielded row lists the codes of the images of all generators of ``K`` in
    ``(dim, gen)`` order.  Vertices branch; every higher generator is looked
    up from the codes of its faces, exactly as in
    :func:`enumerate_simplicial_maps` but for a block of rows at once.

    Only vertex images and images in dimensions where ``Y`` has distinct
    simplices with equal faces are stored while searching; the rest are
    determined by their faces and recomputed when needed.
    """

    def __init__(self, K: FiniteSimplicialSet, Y: FiniteSimplicialSet, roots: Sequence[int] = ()):
        self.K, self.Y = K, Y
        self.nodes = 0  # partial maps produced so far, across all chunks() calls
        top = K.dimension
        self.simplices = [Y.simplices(m) for m in range(top + 1)]
        code = [{y: c for c, y in enumerate(ys)} for ys in self.simplices]
        self.sizes = [len(ys) for ys in self.simplices]
        # mixed-radix key of the face codes -> codes with those faces
        self.lookup: list[tuple[np.ndarray, np.ndarray] | None] = [None]
        self.unique = [True]
        for m in range(1, top + 1):
            base = self.sizes[m - 1]
            if base ** (m + 1) >= 2**62:
                raise ValueError("target too large for table enumeration")
            keys = np.array(
                [sum(code[m - 1][Y.d(y, i)] * base**i for i in range(m + 1)) for y in self.simplices[m]],
                dtype=np.int64,
            )
            perm = np.argsort(keys, kind="stable")
            self.lookup.append((keys[perm], perm.astype(np.int64)))
            self.unique.append(bool(np.all(np.diff(keys[perm]) > 0)))
        self._op_tables: dict = {}
        self.columns = [(k, g) for k in range(len(K.counts)) for g in K.generators(k)]
        self.plan = _map_plan(K, roots)
        self.n_roots = len(roots)
        self.faces = {
            (k, g): [((y.dim, y.gen), self._op_table(y)) for y in K.faces[k][g]]
            for k in range(1, len(K.counts))
            for g in K.generators(k)
        }
        self.stored = [node for node in self.plan if node[0] == 0 or not self.unique[node[0]]]
        self.slot = {node: i for i, node in enumerate(self.stored)}
        self.vertex_slots = [self.slot[(0, v)] for v in K.generators(0)]
        self.dtype = np.int16 if max(self.sizes, default=0) < 2**15 else np.int64

    def _op_table(self, y: Simplex) -> np.ndarray | None:
        """Codes after applying ``y.op`` to every ``y.dim``-simplex of ``Y`` (``None`` for identity)."""
        if y.nondegenerate:
            return None
        key = (y.op, y.dim)
        if key not in self._op_tables:
            target = {s: c for c, s in enumerate(self.simplices[y.degree])}
            self._op_tables[key] = np.array(
                [target[self.Y.apply(s, y.op)] for s in self.simplices[y.dim]], dtype=np.int64
            )
        return self._op_tables[key]

    def _range(self, rows: np.ndarray, node, memo: dict) -> tuple[np.ndarray, np.ndarray]:
        """Lookup range of the codes compatible with the faces of ``node``."""
        k = node[0]
        base = self.sizes[k - 1]
        key = np.zeros(rows.shape[0], dtype=np.int64)
        for i, (face, table) in enumerate(self.faces[node]):
            c = self._codes(rows, face, memo)
            if table is not None:
                c = table[c]
            key += c * base**i
        keys, _ = self.lookup[k]
        return np.searchsorted(keys, key, side="left"), np.searchsorted(keys, key, side="right")

    def _codes(self, rows: np.ndarray, node, memo: dict) -> np.ndarray:
        if node in self.slot:
            return rows[:, self.slot[node]].astype(np.int64)
        if node not in memo:
            lo, _ = self._range(rows, node, memo)
            memo[node] = self.lookup[node[0]][1][lo]
        return memo[node]

    def _extend(self, rows: np.ndarray, step: int) -> np.ndarray:
        node = self.plan[step]
        if node[0] == 0:
            nv = self.sizes[0]
            new = np.tile(np.arange(nv, dtype=self.dtype), rows.shape[0])
            return np.column_stack([np.repeat(rows, nv, axis=0), new])
        lo, hi = self._range(rows, node, {})
        if self.unique[node[0]]:
            return rows[hi > lo]
        counts = hi - lo
        ri = np.repeat(np.arange(rows.shape[0]), counts)
        offsets = np.arange(ri.shape[0]) - np.repeat(np.cumsum(counts) - counts, counts)
        codes = self.lookup[node[0]][1][lo[ri] + offsets]
        return np.column_stack([rows[ri], codes.astype(self.dtype)])

    def _full(self, rows: np.ndarray) -> np.ndarray:
        memo: dict = {}
        return np.column_stack([self._codes(rows, node, memo) for node in self.columns]) if self.columns else rows

    def chunks(
        self,
        prefix: Sequence[int] = (),
        chunk_rows: int = 1 << 18,
        budget: int | None = None,
        full: bool = True,
    ) -> Iterator[np.ndarray]:
        """Yield blocks of complete maps whose root vertices take the values ``prefix``.

        With ``full`` the columns follow ``self.columns``; otherwise only the
        vertex images are returned, in vertex order.
        """
        rows = np.zeros((1, 0), dtype=self.dtype)
        step = 0
        for v in prefix:
            # roots come first in the plan, interleaved with generators they span
            while self.plan[step][0] != 0:
                rows = self._extend(rows, step)
                step += 1
            rows = np.column_stack([rows, np.full(rows.shape[0], v, dtype=self.dtype)])
            step += 1
        produced = 0
        stack = [(rows, step)]
        while stack:
            rows, step = stack.pop()
            if rows.shape[0] == 0:
                continue
            if step == len(self.plan):
                yield self._full(rows) if full else rows[:, self.vertex_slots]
                continue
            rows = self._extend(rows, step)
            produced += rows.shape[0]
            self.nodes += rows.shape[0]
            if budget is not None and produced > budget:
                raise BudgetExceeded(budget)
            for start in range(0, rows.shape[0], chunk_rows)[::-1]:
                stack.append((rows[start : start + chunk_rows], step + 1))

    def count(self, budget: int | None = None) -> int:
        return sum(chunk.shape[0] for chunk in self.chunks(budget=budget, full=False))

    def vertices_determine_maps(self) -> bool:
        """True when every simplex of ``Y`` up to the needed dimension is fixed by its faces."""
        return all(self.unique)

    def decode(self, row: np.ndarray) -> SimplicialMap:
        images: list[list[Simplex]] = [[] for _ in self.K.counts]
        for (k, g), c in zip(self.columns, row):
            images[k].append(self.simplices[k][int(c)])
        return SimplicialMap(tuple(tuple(im) for im in images))
