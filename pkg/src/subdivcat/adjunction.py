"""The nerve/realization adjunctions built from two-fold subdivision.

``relative_nerve(X)`` has as ``n``-simplices the relative functors from the
two-fold subdivision of the ``n``-chain with identity weak equivalences into
``X``.  ``thomason_nerve(C)`` does the same with the ``n``-chain in which all
maps are weak equivalences, which amounts to plain functors.  The left
adjoints glue those subdivided chains along a simplicial set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import numpy as np

from .fpcat import CatPresentation, ColimitPresentation, CyclicityReport, Diagram, Materialized, colimit_presentation, materialize
from .relcat import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    FiniteCategory,
    Functor,
    MonotoneMapTable,
    RelativeCategory,
    Violation,
    as_poset,
    chains_poset,
    check_functor,
    embed_as_hat,
    enumerate_functors,
    enumerate_relative_functors,
    linear_order,
    poset_iso,
    to_category,
    to_relative_category,
)
from .sset import (
    FiniteSimplicialSet,
    Simplex,
    SimplicialMap,
    SimplicialMapTable,
    degeneracy_word,
    enumerate_simplicial_maps,
    generator,
    nerve,
    nerve_simplex,
    sd2_simplex,
)
from .subdivision import codegeneracy, coface, xi_check, xi_hat, xi_simplicial_operator


# --------------------------------------------------------------------------
# truncated simplicial sets
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialSet:
    """Simplicial set known up to dimension ``len(elements) - 1``.

    ``faces[n][i][x]`` is the index of ``d_i`` of element ``x`` of dimension ``n``;
    ``degeneracies[n][j][x]`` the index of ``s_j x`` in dimension ``n + 1``.
    """

    elements: tuple[tuple, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degeneracies: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.elements) - 1

    def size(self, n: int) -> int:
        return len(self.elements[n])

    @cached_property
    def _ez(self) -> list[list[tuple[tuple[int, ...], int]]]:
        """Eilenberg-Zilber decomposition ``(surjection, nondegenerate index)`` of every element."""
        out: list[list] = []
        for n in range(self.dimension + 1):
            row: list = [None] * self.size(n)
            if n > 0:
                for j in range(n):
                    for z, x in enumerate(self.degeneracies[n - 1][j]):
                        if row[x] is None:
                            op, y = out[n - 1][z]
                            # x = s_j z = (op . sigma^j)^* y
                            row[x] = (tuple(op[v] for v in codegeneracy(n - 1, j)), y)
            for x in range(self.size(n)):
                if row[x] is None:
                    row[x] = (tuple(range(n + 1)), x)
            out.append(row)
        return out

    @cached_property
    def generator_index(self) -> list[dict[int, int]]:
        """Per dimension: element index -> generator index, for nondegenerate elements."""
        out = []
        for n, row in enumerate(self._ez):
            nd = [x for x, (op, y) in enumerate(row) if y == x and len(set(op)) == n + 1]
            out.append({x: g for g, x in enumerate(nd)})
        return out

    def to_simplicial_set(self) -> FiniteSimplicialSet:
        """The simplicial set generated by the nondegenerate elements (dimensions <= bound)."""
        gens = self.generator_index
        faces = []
        for n in range(self.dimension + 1):
            row = []
            for x in sorted(gens[n], key=gens[n].get):
                if n == 0:
                    row.append(())
                    continue
                row.append(tuple(self.simplex(n - 1, self.faces[n][i][x]) for i in range(n + 1)))
            faces.append(tuple(row))
        labels = tuple(tuple(self.elements[n][x] for x in sorted(gens[n], key=gens[n].get)) for n in range(self.dimension + 1))
        return FiniteSimplicialSet(tuple(len(g) for g in gens), tuple(faces), labels)

    def simplex(self, n: int, x: int) -> Simplex:
        """Normal form of element ``x`` of dimension ``n``."""
        op, y = self._ez[n][x]
        k = len(set(op)) - 1
        return Simplex(op, k, self.generator_index[k][y])

    def element(self, s: Simplex) -> int:
        """Index of the element named by the normal form ``s``."""
        x = self._gen_inverse[s.dim][s.gen]
        n = s.dim
        # degeneracies at increasing positions do not disturb earlier ones
        for j in degeneracy_word(s.op):
            x = self.degeneracies[n][j][x]
            n += 1
        return x

    @cached_property
    def _gen_inverse(self) -> list[dict[int, int]]:
        return [{g: x for x, g in gens.items()} for gens in self.generator_index]


def check_identities(T: TruncatedSimplicialSet) -> list[Violation]:
    """Check every simplicial identity among the stored face and degeneracy maps."""
    out: list[Violation] = []
    F, S = T.faces, T.degeneracies
    top = T.dimension
    for n in range(2, top + 1):
        for j in range(n + 1):
            for i in range(j):
                for x in range(T.size(n)):
                    if F[n - 1][i][F[n][j][x]] != F[n - 1][j - 1][F[n][i][x]]:
                        out.append(Violation("d_i d_j", (n, i, j, x)))
    for n in range(top):
        for j in range(n + 1):
            for i in range(j + 1 if n + 1 < top else 0):
                for x in range(T.size(n)):
                    if S[n + 1][i][S[n][j][x]] != S[n + 1][j + 1][S[n][i][x]]:
                        out.append(Violation("s_i s_j", (n, i, j, x)))
            for i in range(n + 2):
                for x in range(T.size(n)):
                    lhs = F[n + 1][i][S[n][j][x]]
                    if i < j:
                        rhs = S[n - 1][j - 1][F[n][i][x]]
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = S[n - 1][j][F[n][i - 1][x]]
                    if lhs != rhs:
                        out.append(Violation("d_i s_j", (n, i, j, x)))
    return out


# --------------------------------------------------------------------------
# nerves
# --------------------------------------------------------------------------


def _precompose(F: Functor, G) -> tuple:
    """Key of ``F . G`` for a poset map ``G`` between subdivided chains."""
    H = F.compose_after(G.functor())
    return H.key()


def _build_nerve(elements: list[list[Functor]], hat: bool) -> TruncatedSimplicialSet:
    d = len(elements) - 1
    index = [{F.key(): x for x, F in enumerate(els)} for els in elements]
    faces: list[tuple] = [()]
    for n in range(1, d + 1):
        row = []
        for i in range(n + 1):
            G = xi_simplicial_operator(n - 1, n, coface(n, i), hat)
            row.append(tuple(index[n - 1][_precompose(F, G)] for F in elements[n]))
        faces.append(tuple(row))
    degens: list[tuple] = []
    for n in range(d):
        row = []
        for j in range(n + 1):
            G = xi_simplicial_operator(n + 1, n, codegeneracy(n, j), hat)
            row.append(tuple(index[n + 1][_precompose(F, G)] for F in elements[n]))
        degens.append(tuple(row))
    degens.append(())
    return TruncatedSimplicialSet(
        tuple(tuple(F.key() for F in els) for els in elements), tuple(faces), tuple(degens)
    )


def relative_nerve(X, d: int, budget: int = DEFAULT_BUDGET) -> TruncatedSimplicialSet:
    """Dimensions ``0..d`` of the nerve whose ``n``-simplices are relative functors ``xi(n-check) -> X``."""
    X = to_relative_category(X)
    elements = [enumerate_relative_functors(xi_check(n).result, X, budget=budget) for n in range(d + 1)]
    return _build_nerve(elements, hat=False)


def thomason_nerve(C, d: int, budget: int = DEFAULT_BUDGET) -> TruncatedSimplicialSet:
    """Dimensions ``0..d`` of the nerve whose ``n``-simplices are functors ``xi(n-hat) -> C``."""
    C = to_category(C)
    elements = [enumerate_functors(xi_hat(n).result, C, budget=budget) for n in range(d + 1)]
    return _build_nerve(elements, hat=True)


# --------------------------------------------------------------------------
# comparison with Ex^2 of the classical nerve
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    functors: int
    ex2: int
    bijection: bool

    @property
    def match(self) -> bool:
        return self.functors == self.ex2 and self.bijection

    def __str__(self) -> str:
        return f"n={self.n}: {self.functors} = {self.ex2} {'MATCH' if self.match else 'MISMATCH'}"


@dataclass(frozen=True)
class ThomasonComparison:
    rows: tuple[ComparisonRow, ...]
    method: str

    @property
    def match(self) -> bool:
        return all(r.match for r in self.rows)

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rows)


def subdivision_iso(n: int) -> dict[int, int]:
    """Order isomorphism from ``xi(n-hat)`` onto the chains of chains of ``[n]``."""
    iso = poset_iso(xi_hat(n).result.underlying(), chains_poset(chains_poset(linear_order(n))))
    if iso is None:
        raise AssertionError(f"no isomorphism for n={n}")
    return iso


def _transport(F: Functor, n: int, C: FiniteCategory, NC: FiniteSimplicialSet, K: FiniteSimplicialSet, iso: dict[int, int]) -> SimplicialMap:
    """The simplicial map ``Sd^2 delta(n) -> N C`` induced by ``F: xi(n-hat) -> C`` along ``iso``."""
    Q = chains_poset(chains_poset(linear_order(n)))
    inv = {v: u for u, v in iso.items()}
    src = xi_hat(n).result
    images = []
    for k, labels in enumerate(K.labels):
        row = []
        for lab in labels:
            if k == 0:
                x = inv[Q.elements[lab[0]]]
                row.append(generator(0, F.obj_map[src.index[x]]))
                continue
            string = []
            for m in lab:
                a, b = Q.category.morphisms[m]
                pair = (inv[Q.elements[a]], inv[Q.elements[b]])
                string.append(F.mor_map[src.morphism_id[pair]])
            row.append(nerve_simplex(C, NC, string))
        images.append(tuple(row))
    return SimplicialMap(tuple(images))


def _unbounded(budget: int | None) -> int:
    return budget if budget is not None else 1 << 62


def _compare_objects(C: FiniteCategory, n: int, budget: int) -> ComparisonRow:
    functors = enumerate_functors(xi_hat(n).result, C, budget=budget)
    K, NC = sd2_simplex(n), nerve(C)
    maps = enumerate_simplicial_maps(K, NC, budget=budget)
    iso = subdivision_iso(n)
    image = {_transport(F, n, C, NC, K, iso) for F in functors}
    ok = len(image) == len(functors) and image == set(maps)
    return ComparisonRow(n, len(functors), len(maps), ok)


def _sorted_rows(a: np.ndarray) -> np.ndarray:
    if a.shape[0] == 0:
        return a
    return a[np.lexsort(a.T[::-1])]


def _compare_tables(C: FiniteCategory, n: int, budget: int | None, n_roots: int = 7) -> ComparisonRow:
    P = xi_hat(n).result.underlying()
    Q = as_poset(C)
    K, NC = sd2_simplex(n), nerve(C)
    iso = subdivision_iso(n)
    Qc = chains_poset(chains_poset(linear_order(n)))
    # vertex v of K is the chain-of-chains poset element with position v
    vertex_of = {P.index[x]: Qc.index[y] for x, y in iso.items()}
    element_of_vertex = np.argsort(np.array([vertex_of[i] for i in range(len(P.elements))]))
    roots = MonotoneMapTable(P, Q).order[: min(n_roots, len(P.elements))]
    A = MonotoneMapTable(P, Q, roots=roots)
    B = SimplicialMapTable(K, NC, roots=[vertex_of[r] for r in roots])
    if not B.vertices_determine_maps():
        return _compare_objects(C, n, _unbounded(budget))
    total_a = total_b = 0
    ok = True
    for prefix in A.root_assignments():
        prefix = [int(v) for v in prefix]
        # the budget covers the whole comparison, not one partition
        left = None if budget is None else budget - A.nodes - B.nodes
        try:
            rows_a = list(A.chunks(prefix, budget=left))
            left = None if budget is None else budget - A.nodes - B.nodes
            rows_b = list(B.chunks(prefix, budget=left, full=False))
        except BudgetExceeded:
            raise BudgetExceeded(budget) from None
        a = np.concatenate(rows_a) if rows_a else np.zeros((0, len(P.elements)), dtype=np.int64)
        b = np.concatenate(rows_b) if rows_b else np.zeros((0, K.counts[0]), dtype=np.int64)
        total_a += a.shape[0]
        total_b += b.shape[0]
        transported = _sorted_rows(a[:, element_of_vertex].astype(np.int64))
        b = _sorted_rows(b.astype(np.int64))
        if transported.shape != b.shape or not np.array_equal(transported, b):
            ok = False
        elif transported.shape[0] > 1 and not np.any(np.diff(transported, axis=0), axis=1).all():
            ok = False
    return ComparisonRow(n, total_a, total_b, ok)


def compare_thomason(C, d: int, budget: int | None = DEFAULT_BUDGET, method: str = "auto") -> ThomasonComparison:
    """Compare functors ``xi(n-hat) -> C`` with ``n``-simplices of ``Ex^2 N C`` for ``n <= d``.

    Both sides are enumerated independently.  The bijection sends ``F`` to
    the nerve of ``F`` transported along the order isomorphism between
    ``xi(n-hat)`` and the chains of chains of ``[n]``; it is checked to hit
    every map exactly once.  ``method="tables"`` uses the vectorized kernels
    (posets only), ``"objects"`` the per-element enumerators.
    """
    C = to_category(C)
    if method == "auto":
        method = "tables" if as_poset(C) is not None else "objects"
    rows = []
    for n in range(d + 1):
        if method == "tables":
            rows.append(_compare_tables(C, n, budget))
        else:
            rows.append(_compare_objects(C, n, _unbounded(budget)))
    return ThomasonComparison(tuple(rows), method)


# --------------------------------------------------------------------------
# left adjoints and transposes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LeftAdjoint:
    """Colimit of subdivided chains over the nondegenerate simplices of ``K``.

    Pieces ``0..g-1`` are the subdivided chains of the generators (in
    ``(dim, gen)`` order); the remaining pieces are apexes of the face spans,
    each with ``home[piece] = (generator piece, map into it)``.
    """

    K: FiniteSimplicialSet
    hat: bool
    diagram: Diagram
    colimit: ColimitPresentation
    generator_piece: dict[tuple[int, int], int]
    home: tuple[tuple[int, object], ...]

    @property
    def presentation(self) -> CatPresentation:
        return self.colimit.presentation


def left_adjoint_diagram(K: FiniteSimplicialSet, hat: bool = False) -> LeftAdjoint:
    sub = xi_hat if hat else xi_check
    pieces = []
    generator_piece = {}
    home = []
    for k in range(len(K.counts)):
        for g in K.generators(k):
            generator_piece[(k, g)] = len(pieces)
            home.append((len(pieces), None))
            pieces.append(sub(k).result)
    arrows = []
    for k in range(1, len(K.counts)):
        for g in K.generators(k):
            for i, y in enumerate(K.faces[k][g]):
                apex = len(pieces)
                pieces.append(sub(k - 1).result)
                into_sigma = xi_simplicial_operator(k - 1, k, coface(k, i), hat)
                into_face = xi_simplicial_operator(k - 1, y.dim, y.op, hat)
                arrows.append((apex, generator_piece[(k, g)], into_sigma))
                arrows.append((apex, generator_piece[(y.dim, y.gen)], into_face))
                home.append((generator_piece[(k, g)], into_sigma))
    diagram = Diagram(tuple(pieces), tuple(arrows))
    return LeftAdjoint(K, hat, diagram, colimit_presentation(diagram), generator_piece, tuple(home))


def left_adjoint_relative(K: FiniteSimplicialSet) -> CatPresentation:
    """Presentation of the colimit of ``xi(n-check)`` over the simplices of ``K``."""
    return left_adjoint_diagram(K, hat=False).presentation


def left_adjoint_thomason(K: FiniteSimplicialSet) -> CatPresentation:
    """Presentation of the colimit of ``xi(n-hat)`` over the simplices of ``K``; every edge is a weak equivalence."""
    return left_adjoint_diagram(K, hat=True).presentation


class NotMaterializable(ValueError):
    pass


@dataclass
class Adjunction:
    """Both hom-sets of the adjunction for a fixed ``K`` and ``X``, with the transposes."""

    K: FiniteSimplicialSet
    X: RelativeCategory
    budget: int = DEFAULT_BUDGET
    left: LeftAdjoint = field(init=False)
    cK: Materialized = field(init=False)
    nerve: TruncatedSimplicialSet = field(init=False)
    nerve_sset: FiniteSimplicialSet = field(init=False)

    def __post_init__(self):
        self.X = to_relative_category(self.X)
        self.left = left_adjoint_diagram(self.K)
        m = materialize(self.left.presentation)
        if isinstance(m, CyclicityReport):
            raise NotMaterializable(f"left adjoint has a directed cycle {m.cycle}")
        self.cK = m
        self.nerve = relative_nerve(self.X, max(self.K.dimension, 0), self.budget)
        self.nerve_sset = self.nerve.to_simplicial_set()
        self._edge_origin = {}
        for p, table in enumerate(self.left.colimit.cover_edge):
            for ab, e in table.items():
                self._edge_origin[e] = (p, ab)

    def left_hom(self) -> list[Functor]:
        return enumerate_relative_functors(self.cK.category, self.X, budget=self.budget)

    def right_hom(self) -> list[SimplicialMap]:
        return enumerate_simplicial_maps(self.K, self.nerve_sset, budget=self.budget)

    def _leg_functor(self, piece: int, g: Functor) -> Functor:
        """``g`` restricted along the leg of ``piece``."""
        P = self.left.diagram.pieces[piece]
        legs = self.left.colimit.legs[piece]
        cover = self.left.colimit.cover_edge[piece]
        from .fpcat import _canonical_paths

        canon = _canonical_paths(P)
        obj = tuple(g.obj_map[legs[i]] for i in range(len(P.elements)))
        mor = []
        for a, b in sorted(P.leq):
            m = self.cK.morphism_of_path(legs[P.index[a]], [cover[c] for c in canon[(a, b)]])
            mor.append(g.mor_map[m])
        return Functor(obj, tuple(mor))

    def transpose(self, g: Functor) -> SimplicialMap:
        images = []
        for k in range(len(self.K.counts)):
            row = []
            for gen in self.K.generators(k):
                F = self._leg_functor(self.left.generator_piece[(k, gen)], g)
                x = self.nerve_index[k][F.key()]
                row.append(self.nerve.simplex(k, x))
            images.append(tuple(row))
        return SimplicialMap(tuple(images))

    @cached_property
    def nerve_index(self) -> list[dict[tuple, int]]:
        return [{key: x for x, key in enumerate(els)} for els in self.nerve.elements]

    def inverse_transpose(self, phi: SimplicialMap) -> Functor:
        left, cK, X = self.left, self.cK.category, self.X.base
        functors: dict[int, tuple] = {}
        for (k, gen), p in left.generator_piece.items():
            functors[p] = self.nerve.elements[k][self.nerve.element(phi.images[k][gen])]
        obj = [None] * cK.n_objects
        for (k, gen), p in sorted(left.generator_piece.items()):
            for i, v in enumerate(left.colimit.legs[p]):
                if obj[v] is None:
                    obj[v] = functors[p][0][i]
        edge_image = {}
        for e, (p, (a, b)) in self._edge_origin.items():
            target, to_target = left.home[p]
            if to_target is not None:
                a, b = to_target(a), to_target(b)
            P = left.diagram.pieces[target]
            edge_image[e] = functors[target][1][P.morphism_id[(a, b)]]
        mor = []
        for m, path in enumerate(self.cK.paths):
            src = cK.morphisms[m][0]
            h = X.identity[obj[src]]
            for e in path:
                h = X.compose[(edge_image[e], h)]
            mor.append(h)
        return Functor(tuple(obj), tuple(mor), cK, self.X)

    def check(self) -> dict:
        """Enumerate both sides and verify the transposes pointwise."""
        lhs, rhs = self.left_hom(), self.right_hom()
        forward = [self.transpose(g) for g in lhs]
        backward = [self.inverse_transpose(phi) for phi in rhs]
        ok_forward = all(self.inverse_transpose(f) == g for f, g in zip(forward, lhs))
        ok_backward = all(self.transpose(g) == phi for g, phi in zip(backward, rhs))
        functorial = all(not check_functor(g, self.cK.category, self.X) for g in backward)
        return {
            "left": len(lhs),
            "right": len(rhs),
            "forward_inverse": ok_forward,
            "backward_inverse": ok_backward,
            "backward_functors_valid": functorial,
            "bijective": len(set(forward)) == len(lhs) and set(forward) == set(rhs),
        }


def adjunction_check(K: FiniteSimplicialSet, X, budget: int = DEFAULT_BUDGET) -> dict:
    return Adjunction(K, X, budget).check()


def thomason_relative_agree(C, d: int) -> bool:
    """``relative_nerve(embed_as_hat(C))`` and ``thomason_nerve(C)`` agree dimensionwise."""
    C = to_category(C)
    R = relative_nerve(embed_as_hat(C), d)
    T = thomason_nerve(C, d)
    return R.elements == T.elements


# --------------------------------------------------------------------------
# exploratory: inner horn fillers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HornReport:
    n: int
    k: int
    horns: int
    unfilled: int


def inner_horn_report(T: TruncatedSimplicialSet, n: int, k: int) -> HornReport:
    """Count the horns ``Lambda^n_k -> T`` and how many have no filler in ``T_n``.

    A horn is a family ``(y_i)_{i != k}`` of ``(n-1)``-elements with
    ``d_i y_j = d_{j-1} y_i`` for ``i < j``.
    """
    if not 0 < k < n <= T.dimension:
        raise ValueError("need 0 < k < n <= dimension")
    F = T.faces
    idx = [i for i in range(n + 1) if i != k]
    filled = {tuple(F[n][i][x] for i in idx) for x in range(T.size(n))}
    by_face: dict[tuple[int, int], list[int]] = {}
    if n >= 2:
        for i in range(n):
            for y in range(T.size(n - 1)):
                by_face.setdefault((i, F[n - 1][i][y]), []).append(y)
    horns = unfilled = 0

    def rec(pos: int, chosen: list[int]) -> None:
        nonlocal horns, unfilled
        if pos == len(idx):
            horns += 1
            unfilled += tuple(chosen) not in filled
            return
        j = idx[pos]
        candidates = range(T.size(n - 1))
        if pos:
            # d_{i0} y_j must equal d_{j-1} y_{i0} for the first chosen index i0
            i0 = idx[0]
            candidates = by_face.get((i0, F[n - 1][j - 1][chosen[0]]), [])
        for y in candidates:
            if all(F[n - 1][i][y] == F[n - 1][j - 1][chosen[p]] for p, i in enumerate(idx[:pos])):
                chosen.append(y)
                rec(pos + 1, chosen)
                chosen.pop()

    rec(0, [])
    return HornReport(n, k, horns, unfilled)
