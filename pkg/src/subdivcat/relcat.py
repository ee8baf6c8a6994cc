"""Finite categories, relative categories and relative posets.

Morphisms are dense integer ids.  Composition is stored as a dict keyed by
``(g, f)`` for composable pairs ``f: a -> b``, ``g: b -> c`` and holds the id
of ``g . f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_BUDGET = 10**7

Chain = tuple  # strictly increasing tuple of poset elements


class BudgetExceeded(RuntimeError):
    """A backtracking search visited more nodes than its budget allows."""

    def __init__(self, budget: int):
        super().__init__(f"search node budget {budget} exceeded")
        self.budget = budget


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.axiom}: {self.witness}"


# --------------------------------------------------------------------------
# categories
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    n_objects: int
    morphisms: tuple[tuple[int, int], ...]  # id -> (source, target)
    identity: tuple[int, ...]  # object -> morphism id
    compose: dict[tuple[int, int], int]  # (g, f) -> g.f
    labels: tuple | None = None  # optional object names

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    def src(self, m: int) -> int:
        return self.morphisms[m][0]

    def tgt(self, m: int) -> int:
        return self.morphisms[m][1]

    @cached_property
    def hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for m, st in enumerate(self.morphisms):
            out.setdefault(st, []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    def homset(self, a: int, b: int) -> tuple[int, ...]:
        return self.hom.get((a, b), ())

    @cached_property
    def identity_set(self) -> frozenset[int]:
        return frozenset(self.identity)

    def opposite(self) -> FiniteCategory:
        return FiniteCategory(
            self.n_objects,
            tuple((t, s) for s, t in self.morphisms),
            self.identity,
            {(f, g): h for (g, f), h in self.compose.items()},
            self.labels,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (
            self.n_objects == other.n_objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __hash__(self) -> int:
        return hash((self.n_objects, self.morphisms, self.identity))


@dataclass(frozen=True, eq=False)
class RelativeCategory:
    base: FiniteCategory
    we: frozenset[int]

    @property
    def n_objects(self) -> int:
        return self.base.n_objects

    @property
    def morphisms(self) -> tuple[tuple[int, int], ...]:
        return self.base.morphisms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelativeCategory):
            return NotImplemented
        return self.base == other.base and self.we == other.we

    def __hash__(self) -> int:
        return hash((self.base, self.we))


def embed_as_hat(C: FiniteCategory) -> RelativeCategory:
    """View ``C`` as a relative category in which every map is a weak equivalence."""
    return RelativeCategory(C, frozenset(range(len(C.morphisms))))


def minimal_relative(C: FiniteCategory) -> RelativeCategory:
    return RelativeCategory(C, frozenset(C.identity))


# --------------------------------------------------------------------------
# posets
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Poset:
    """Finite poset stored with its full reflexive-transitive relation."""

    elements: tuple[int, ...]
    leq: frozenset[tuple[int, int]]
    labels: tuple | None = None

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.elements == other.elements and self.leq == other.leq

    def __hash__(self) -> int:
        return hash((self.elements, self.leq))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def up(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {x: set() for x in self.elements}
        for a, b in self.leq:
            out[a].add(b)
        return {x: frozenset(v) for x, v in out.items()}

    @cached_property
    def down(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {x: set() for x in self.elements}
        for a, b in self.leq:
            out[b].add(a)
        return {x: frozenset(v) for x, v in out.items()}

    def lt(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self.leq

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse covers ``a < b`` with nothing strictly between, sorted."""
        out = []
        for a, b in sorted(self.leq):
            if a == b:
                continue
            if not any(self.lt(a, c) and self.lt(c, b) for c in self.up[a]):
                out.append((a, b))
        return tuple(out)

    def opposite(self) -> Poset:
        return Poset(self.elements, frozenset((b, a) for a, b in self.leq), self.labels)

    def underlying(self) -> Poset:
        return self

    @cached_property
    def category(self) -> FiniteCategory:
        return _poset_category(self.elements, self.leq, self.labels)

    @cached_property
    def morphism_id(self) -> dict[tuple[int, int], int]:
        return {pair: i for i, pair in enumerate(sorted(self.leq))}


@dataclass(frozen=True, eq=False)
class RelativePoset(Poset):
    we: frozenset[tuple[int, int]] = frozenset()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelativePoset):
            return NotImplemented
        return Poset.__eq__(self, other) and self.we == other.we

    def __hash__(self) -> int:
        return hash((self.elements, self.leq, self.we))

    def underlying(self) -> Poset:
        return Poset(self.elements, self.leq, self.labels)

    def opposite(self) -> RelativePoset:
        flip = lambda rel: frozenset((b, a) for a, b in rel)  # noqa: E731
        return RelativePoset(self.elements, flip(self.leq), self.labels, flip(self.we))

    @cached_property
    def relative_category(self) -> RelativeCategory:
        ids = self.morphism_id
        return RelativeCategory(self.category, frozenset(ids[p] for p in self.we))


def _poset_category(elements, leq, labels=None) -> FiniteCategory:
    index = {x: i for i, x in enumerate(elements)}
    pairs = sorted(leq)
    mid = {p: i for i, p in enumerate(pairs)}
    morphisms = tuple((index[a], index[b]) for a, b in pairs)
    identity = tuple(mid[(x, x)] for x in elements)
    by_src: dict[int, list[tuple[int, int]]] = {}
    for a, b in pairs:
        by_src.setdefault(a, []).append((a, b))
    compose = {}
    for a, b in pairs:
        for _, c in by_src.get(b, ()):
            compose[(mid[(b, c)], mid[(a, b)])] = mid[(a, c)]
    return FiniteCategory(len(elements), morphisms, identity, compose, labels)


def make_poset(elements: Iterable[int], relations: Iterable[tuple[int, int]], labels=None) -> Poset:
    """Build a poset from generating relations (reflexive-transitive closure)."""
    els = tuple(sorted(elements))
    return Poset(els, _closure(els, relations), labels)


def make_relative_poset(
    elements: Iterable[int],
    relations: Iterable[tuple[int, int]],
    we: Iterable[tuple[int, int]] = (),
    labels=None,
) -> RelativePoset:
    """Close both ``relations`` and ``we`` reflexively and transitively."""
    els = tuple(sorted(elements))
    we = list(we)
    return RelativePoset(els, _closure(els, list(relations) + we), labels, _closure(els, we))


def _closure(elements, pairs) -> frozenset[tuple[int, int]]:
    succ: dict = {x: {x} for x in elements}
    for a, b in pairs:
        succ[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in elements:
            reach = set().union(*(succ[b] for b in succ[a]))
            if not reach <= succ[a]:
                succ[a] |= reach
                changed = True
    return frozenset((a, b) for a in elements for b in succ[a])


def make_check(n: int) -> RelativePoset:
    """The linear order 0 < ... < n whose weak equivalences are the identities."""
    if n < 0:
        raise ValueError("n must be >= 0")
    els = tuple(range(n + 1))
    leq = frozenset((a, b) for a in els for b in els if a <= b)
    return RelativePoset(els, leq, None, frozenset((a, a) for a in els))


def make_hat(n: int) -> RelativePoset:
    """The linear order 0 < ... < n in which every map is a weak equivalence."""
    p = make_check(n)
    return RelativePoset(p.elements, p.leq, None, p.leq)


def linear_order(n: int) -> Poset:
    return make_check(n).underlying()


def to_relative_category(X: RelativeCategory | RelativePoset) -> RelativeCategory:
    return X.relative_category if isinstance(X, RelativePoset) else X


def to_category(C: FiniteCategory | RelativeCategory | Poset) -> FiniteCategory:
    if isinstance(C, Poset):
        return C.category
    if isinstance(C, RelativeCategory):
        return C.base
    return C


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


def validate_category(C: FiniteCategory) -> list[Violation]:
    out: list[Violation] = []
    n_mor = len(C.morphisms)
    for m, (s, t) in enumerate(C.morphisms):
        if not (0 <= s < C.n_objects and 0 <= t < C.n_objects):
            out.append(Violation("endpoint-invalid", (m, s, t)))
    if out:
        return out
    if len(C.identity) != C.n_objects:
        return [Violation("identity-missing", (len(C.identity), C.n_objects))]
    for x, i in enumerate(C.identity):
        if not 0 <= i < n_mor or C.morphisms[i] != (x, x):
            out.append(Violation("identity-not-endomorphism", (x, i)))
    if out:
        return out
    by_src: dict[int, list[int]] = {}
    for m, (s, _) in enumerate(C.morphisms):
        by_src.setdefault(s, []).append(m)
    for f, (a, b) in enumerate(C.morphisms):
        for g in by_src.get(b, ()):
            h = C.compose.get((g, f))
            if h is None:
                out.append(Violation("composition-missing", (g, f)))
            elif not 0 <= h < n_mor or C.morphisms[h] != (a, C.tgt(g)):
                out.append(Violation("composition-ill-typed", (g, f, h)))
    for (g, f) in C.compose:
        if not (0 <= f < n_mor and 0 <= g < n_mor) or C.tgt(f) != C.src(g):
            out.append(Violation("composition-not-composable", (g, f)))
    if out:
        return out
    for f, (a, b) in enumerate(C.morphisms):
        if C.compose[(C.identity[b], f)] != f:
            out.append(Violation("identity-not-left-neutral", (f,)))
        if C.compose[(f, C.identity[a])] != f:
            out.append(Violation("identity-not-right-neutral", (f,)))
    for (g, f), gf in C.compose.items():
        for h in range(n_mor):
            if C.src(h) != C.tgt(g):
                continue
            if C.compose[(h, gf)] != C.compose[(C.compose[(h, g)], f)]:
                out.append(Violation("associativity", (h, g, f)))
    return out


def validate_poset(P: Poset) -> list[Violation]:
    out: list[Violation] = []
    els = set(P.elements)
    if len(els) != len(P.elements):
        out.append(Violation("duplicate-element", tuple(P.elements)))
    for a, b in sorted(P.leq):
        if a not in els or b not in els:
            out.append(Violation("relation-unknown-element", (a, b)))
    if out:
        return out
    for x in P.elements:
        if (x, x) not in P.leq:
            out.append(Violation("leq-not-reflexive", (x,)))
    for a, b in sorted(P.leq):
        if a != b and (b, a) in P.leq and a < b:
            out.append(Violation("leq-not-antisymmetric", (a, b)))
        for c in sorted(P.up[b]):
            if (a, c) not in P.leq:
                out.append(Violation("leq-not-transitive", (a, b, c)))
    if isinstance(P, RelativePoset):
        for a, b in sorted(P.we):
            if (a, b) not in P.leq:
                out.append(Violation("we-not-in-leq", (a, b)))
        for x in P.elements:
            if (x, x) not in P.we:
                out.append(Violation("identity-not-we", (x,)))
        we_up: dict[int, set[int]] = {}
        for a, b in P.we:
            we_up.setdefault(a, set()).add(b)
        for a, b in sorted(P.we):
            for c in sorted(we_up.get(b, ())):
                if (a, c) not in P.we:
                    out.append(Violation("we-not-composition-closed", (a, b, c)))
    return out


def validate(X: RelativeCategory | FiniteCategory | Poset) -> list[Violation]:
    """List every violated axiom with witnessing ids; empty iff ``X`` is valid."""
    if isinstance(X, Poset):
        return validate_poset(X)
    if isinstance(X, FiniteCategory):
        return validate_category(X)
    out = validate_category(X.base)
    if out:
        return out
    n_mor = len(X.base.morphisms)
    for m in sorted(X.we):
        if not 0 <= m < n_mor:
            out.append(Violation("we-unknown-morphism", (m,)))
    for x, i in enumerate(X.base.identity):
        if i not in X.we:
            out.append(Violation("identity-not-we", (x, i)))
    for (g, f), h in sorted(X.base.compose.items()):
        if g in X.we and f in X.we and h not in X.we:
            out.append(Violation("we-not-composition-closed", (g, f, h)))
    return out


# --------------------------------------------------------------------------
# chains
# --------------------------------------------------------------------------


def chains(P: Poset) -> list[Chain]:
    """All nonempty chains of ``P`` as increasing tuples, sorted by (length, entries)."""
    out: list[Chain] = []

    def extend(c: Chain) -> None:
        out.append(c)
        last = c[-1]
        for y in sorted(P.up[last]):
            if y != last:
                extend(c + (y,))

    for x in P.elements:
        extend((x,))
    out.sort(key=lambda c: (len(c), c))
    return out


def chains_poset(P: Poset) -> Poset:
    """Chains of ``P`` ordered by inclusion; ``labels[i]`` is the i-th chain."""
    cs = chains(P)
    sets = [frozenset(c) for c in cs]
    by_vertex: dict[int, set[int]] = {}
    for i, s in enumerate(sets):
        for x in s:
            by_vertex.setdefault(x, set()).add(i)
    leq = set()
    for i, s in enumerate(sets):
        supers = set.intersection(*(by_vertex[x] for x in s))
        leq.update((i, j) for j in supers)
    return Poset(tuple(range(len(cs))), frozenset(leq), tuple(cs))


# --------------------------------------------------------------------------
# functors
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Functor:
    """A functor given by its object and morphism maps.

    ``source``/``target`` are carried for convenience but excluded from
    equality so sets of functors hash cheaply.
    """

    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]
    source: FiniteCategory | RelativeCategory | None = field(default=None, compare=False, repr=False)
    target: FiniteCategory | RelativeCategory | None = field(default=None, compare=False, repr=False)

    def key(self) -> tuple:
        return (self.obj_map, self.mor_map)

    def compose_after(self, other: Functor) -> Functor:
        """``self . other``."""
        return Functor(
            tuple(self.obj_map[x] for x in other.obj_map),
            tuple(self.mor_map[m] for m in other.mor_map),
            other.source,
            self.target,
        )


RelFunctor = Functor


def check_functor(F: Functor, A, X) -> list[Violation]:
    """Check ``F`` is a (relative, when both sides are relative) functor ``A -> X``."""
    A_cat, X_cat = to_category(A), to_category(X)
    out = []
    if len(F.obj_map) != A_cat.n_objects or len(F.mor_map) != len(A_cat.morphisms):
        return [Violation("functor-shape", (len(F.obj_map), len(F.mor_map)))]
    for m, (s, t) in enumerate(A_cat.morphisms):
        if X_cat.morphisms[F.mor_map[m]] != (F.obj_map[s], F.obj_map[t]):
            out.append(Violation("functor-endpoints", (m,)))
    for x, i in enumerate(A_cat.identity):
        if F.mor_map[i] != X_cat.identity[F.obj_map[x]]:
            out.append(Violation("functor-identity", (x,)))
    for (g, f), h in A_cat.compose.items():
        if X_cat.compose.get((F.mor_map[g], F.mor_map[f])) != F.mor_map[h]:
            out.append(Violation("functor-composition", (g, f)))
    if isinstance(A, (RelativeCategory, RelativePoset)) and isinstance(X, (RelativeCategory, RelativePoset)):
        A_we, X_we = to_relative_category(A).we, to_relative_category(X).we
        for m in sorted(A_we):
            if F.mor_map[m] not in X_we:
                out.append(Violation("functor-we", (m,)))
    return out


def _search_plan(A: FiniteCategory) -> list[tuple[str, int]]:
    """Order objects greedily by connectivity; place each morphism right after its endpoints."""
    n = A.n_objects
    nbrs: dict[int, set[int]] = {x: set() for x in range(n)}
    for s, t in A.morphisms:
        if s != t:
            nbrs[s].add(t)
            nbrs[t].add(s)
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < n:
        best = max(
            (x for x in range(n) if x not in placed),
            key=lambda x: (len(nbrs[x] & placed), len(nbrs[x]), -x),
        )
        order.append(best)
        placed.add(best)
    pos = {x: i for i, x in enumerate(order)}
    by_step: dict[int, list[int]] = {}
    for m, (s, t) in enumerate(A.morphisms):
        by_step.setdefault(max(pos[s], pos[t]), []).append(m)
    plan: list[tuple[str, int]] = []
    for i, x in enumerate(order):
        plan.append(("obj", x))
        plan.extend(("mor", m) for m in by_step.get(i, ()))
    return plan


def _enumerate(A: FiniteCategory, X: FiniteCategory, we_a, we_x, budget: int) -> list[Functor]:
    plan = _search_plan(A)
    step_of = {(kind, v): i for i, (kind, v) in enumerate(plan)}
    # composition constraints fire at the step where their last morphism is assigned
    checks: dict[int, list[tuple[int, int, int]]] = {}
    for (g, f), h in A.compose.items():
        last = max(step_of[("mor", g)], step_of[("mor", f)], step_of[("mor", h)])
        checks.setdefault(last, []).append((g, f, h))
    identity_of = {i: x for x, i in enumerate(A.identity)}
    obj = [-1] * A.n_objects
    mor = [-1] * len(A.morphisms)
    results: list[Functor] = []
    nodes = 0
    all_objects = tuple(range(X.n_objects))

    def candidates(step: int) -> Sequence[int]:
        kind, v = plan[step]
        if kind == "obj":
            return all_objects
        if v in identity_of:
            return (X.identity[obj[identity_of[v]]],)
        s, t = A.morphisms[v]
        homs = X.homset(obj[s], obj[t])
        if we_a is not None and v in we_a:
            homs = tuple(h for h in homs if h in we_x)
        return homs

    def consistent(step: int) -> bool:
        for g, f, h in checks.get(step, ()):
            if X.compose[(mor[g], mor[f])] != mor[h]:
                return False
        return True

    if not plan:
        return [Functor((), (), A, X)]
    # iterative depth-first search; stack[i] iterates the candidates of step i
    stack = [iter(candidates(0))]
    while stack:
        step = len(stack) - 1
        kind, v = plan[step]
        target = obj if kind == "obj" else mor
        for c in stack[-1]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            target[v] = c
            if consistent(step):
                break
        else:
            target[v] = -1
            stack.pop()
            continue
        if step + 1 == len(plan):
            results.append(Functor(tuple(obj), tuple(mor)))
        else:
            stack.append(iter(candidates(step + 1)))
    results.sort(key=Functor.key)
    return [Functor(F.obj_map, F.mor_map, A, X) for F in results]


def enumerate_functors(A, C, budget: int = DEFAULT_BUDGET) -> list[Functor]:
    """All functors between the underlying categories, sorted by id tuples."""
    A_cat, C_cat = to_category(A), to_category(C)
    return _enumerate(A_cat, C_cat, None, None, budget)


def enumerate_relative_functors(A, X, budget: int = DEFAULT_BUDGET) -> list[Functor]:
    """All functors ``A -> X`` sending weak equivalences to weak equivalences.

    Raises :class:`BudgetExceeded` when the search visits more than
    ``budget`` nodes.
    """
    A_rel, X_rel = to_relative_category(A), to_relative_category(X)
    F = _enumerate(A_rel.base, X_rel.base, A_rel.we, X_rel.we, budget)
    return [Functor(f.obj_map, f.mor_map, A_rel, X_rel) for f in F]


def monotone_maps(P: Poset, Q: Poset) -> Iterator[tuple[int, ...]]:
    """Brute force over all element maps; yields positional images.  Tiny inputs only."""
    for img in product(Q.elements, repeat=len(P.elements)):
        f = dict(zip(P.elements, img))
        if all((f[a], f[b]) in Q.leq for a, b in P.leq):
            yield img


# --------------------------------------------------------------------------
# isomorphism
# --------------------------------------------------------------------------


def _signature(P: Poset, x: int, extra=None) -> tuple:
    sig = (len(P.up[x]), len(P.down[x]), tuple(sorted(len(P.up[y]) for y in P.up[x])), tuple(sorted(len(P.down[y]) for y in P.down[x])))
    if extra is not None:
        sig += (sum(1 for a, b in extra if a == x), sum(1 for a, b in extra if b == x))
    return sig


def poset_iso(P: Poset, Q: Poset, respect_we: bool = False) -> dict[int, int] | None:
    """Find an order isomorphism ``P -> Q`` by backtracking, or ``None``.

    With ``respect_we`` both arguments must be relative posets and the map
    must also carry weak equivalences onto weak equivalences.
    """
    if len(P.elements) != len(Q.elements) or len(P.leq) != len(Q.leq):
        return None
    we_p = P.we if respect_we else None
    we_q = Q.we if respect_we else None
    if respect_we and len(we_p) != len(we_q):
        return None
    sig_p = {x: _signature(P, x, we_p) for x in P.elements}
    sig_q = {y: _signature(Q, y, we_q) for y in Q.elements}
    if sorted(sig_p.values()) != sorted(sig_q.values()):
        return None
    class_size: dict = {}
    for y in Q.elements:
        class_size[sig_q[y]] = class_size.get(sig_q[y], 0) + 1
    # search order: rarest signature first, then keep to elements comparable to placed ones
    order: list[int] = []
    anchor: dict[int, int] = {}
    placed: set[int] = set()
    while len(order) < len(P.elements):
        frontier = [x for x in P.elements if x not in placed and x in anchor]
        pool = frontier or [x for x in P.elements if x not in placed]
        x = min(pool, key=lambda z: (class_size[sig_p[z]], z))
        order.append(x)
        placed.add(x)
        for z in P.up[x] | P.down[x]:
            anchor.setdefault(z, x)
    f: dict[int, int] = {}
    used: set[int] = set()

    def ok(x: int, y: int) -> bool:
        for x2, y2 in f.items():
            if ((x, x2) in P.leq) != ((y, y2) in Q.leq):
                return False
            if ((x2, x) in P.leq) != ((y2, y) in Q.leq):
                return False
            if respect_we:
                if ((x, x2) in we_p) != ((y, y2) in we_q):
                    return False
                if ((x2, x) in we_p) != ((y2, y) in we_q):
                    return False
        return True

    def candidates(i: int):
        x = order[i]
        a = anchor.get(x)
        if a is not None and a in f and a != x:
            pool = sorted(Q.up[f[a]] if (a, x) in P.leq else Q.down[f[a]])
        else:
            pool = Q.elements
        return iter([y for y in pool if y not in used and sig_q[y] == sig_p[x]])

    stack = [candidates(0)] if order else []
    while stack:
        i = len(stack) - 1
        x = order[i]
        if x in f:
            used.discard(f.pop(x))
        for y in stack[-1]:
            if ok(x, y):
                f[x] = y
                used.add(y)
                break
        else:
            stack.pop()
            continue
        if len(stack) == len(order):
            return dict(sorted(f.items()))
        stack.append(candidates(i + 1))
    return {} if not order else None


def is_isomorphism(f: dict[int, int], P: Poset, Q: Poset) -> bool:
    """Exhaustive check that ``f`` is a bijection reflecting and preserving order."""
    if sorted(f) != sorted(P.elements) or sorted(f.values()) != sorted(Q.elements):
        return False
    return all(((a, b) in P.leq) == ((f[a], f[b]) in Q.leq) for a in P.elements for b in P.elements)


def thin_to_relative_poset(X: RelativeCategory) -> RelativePoset | None:
    """Read a thin, skeletal relative category as a relative poset (``None`` otherwise)."""
    C = X.base
    if any(len(ms) > 1 for ms in C.hom.values()):
        return None
    leq = frozenset(C.morphisms)
    if any(a != b and (b, a) in leq for a, b in leq):
        return None
    we = frozenset(C.morphisms[m] for m in X.we)
    return RelativePoset(tuple(C.objects), leq, C.labels, we)


def relabel_category(C: FiniteCategory, obj_perm: Sequence[int], mor_perm: Sequence[int]) -> FiniteCategory:
    """Rename object ``x`` to ``obj_perm[x]`` and morphism ``m`` to ``mor_perm[m]``."""
    n_mor = len(C.morphisms)
    morphisms = [None] * n_mor
    for m, (s, t) in enumerate(C.morphisms):
        morphisms[mor_perm[m]] = (obj_perm[s], obj_perm[t])
    identity = [None] * C.n_objects
    for x, i in enumerate(C.identity):
        identity[obj_perm[x]] = mor_perm[i]
    compose = {(mor_perm[g], mor_perm[f]): mor_perm[h] for (g, f), h in C.compose.items()}
    return FiniteCategory(C.n_objects, tuple(morphisms), tuple(identity), compose)


def relabel(X: RelativeCategory, obj_perm: Sequence[int], mor_perm: Sequence[int]) -> RelativeCategory:
    return RelativeCategory(relabel_category(X.base, obj_perm, mor_perm), frozenset(mor_perm[m] for m in X.we))


def discrete_category(n: int) -> FiniteCategory:
    return FiniteCategory(n, tuple((x, x) for x in range(n)), tuple(range(n)), {(x, x): x for x in range(n)})


def empty_category() -> FiniteCategory:
    return discrete_category(0)


# --------------------------------------------------------------------------
# vectorized monotone-map tables (thin source and target)
# --------------------------------------------------------------------------


class MonotoneMapTable:
    """Enumerate order-preserving maps ``P -> Q`` as integer arrays.

    Row ``r`` of a chunk lists the images of ``P.elements`` in order, given as
    positions in ``Q.elements``.  With ``relative=True`` weak equivalences of
    ``P`` must land in weak equivalences of ``Q``.  This is the bulk
    counterpart of :func:`enumerate_relative_functors` for posets: partial
    maps are extended one element at a time for a whole block of rows.
    """

    def __init__(self, P: Poset, Q: Poset, relative: bool = False, roots: Sequence[int] = ()):
        self.P, self.Q = P, Q
        self.nodes = 0  # partial maps produced so far, across all chunks() calls
        n, nq = len(P.elements), len(Q.elements)
        qi = Q.index
        leq = np.zeros((nq, nq), dtype=bool)
        for a, b in Q.leq:
            leq[qi[a], qi[b]] = True
        pairs = [(P.index[a], P.index[b], leq) for a, b in P.covers]
        if relative:
            we = np.zeros((nq, nq), dtype=bool)
            for a, b in Q.we:
                we[qi[a], qi[b]] = True
            pairs += [(P.index[a], P.index[b], we) for a, b in sorted(P.we) if a != b]
        nbrs: dict[int, set[int]] = {i: set() for i in range(n)}
        for a, b, _ in pairs:
            nbrs[a].add(b)
            nbrs[b].add(a)
        order = list(roots)
        placed = set(order)
        while len(order) < n:
            best = max(
                (i for i in range(n) if i not in placed),
                key=lambda i: (len(nbrs[i] & placed), len(nbrs[i]), -i),
            )
            order.append(best)
            placed.add(best)
        self.order = order
        col = {x: c for c, x in enumerate(order)}
        # constraints[c]: (earlier column, allowed[f(earlier), y]) for the element at column c
        self.constraints: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(n)]
        for a, b, M in pairs:
            ca, cb = col[a], col[b]
            if ca < cb:
                self.constraints[cb].append((ca, M))
            else:
                self.constraints[ca].append((cb, M.T))
        self.n_roots = len(roots)
        self.nq = nq
        self.dtype = np.uint8 if nq < 256 else np.int32
        self.unpermute = np.argsort(np.array(order, dtype=np.int64)) if n else np.zeros(0, dtype=np.int64)

    def _extend(self, rows: np.ndarray, c: int) -> np.ndarray:
        allowed = np.ones((rows.shape[0], self.nq), dtype=bool)
        for other, M in self.constraints[c]:
            allowed &= M[rows[:, other]]
        ri, y = np.nonzero(allowed)
        return np.column_stack([rows[ri], y.astype(self.dtype)])

    def root_assignments(self) -> np.ndarray:
        """Consistent assignments of the root elements (columns in root order)."""
        rows = np.zeros((1, 0), dtype=self.dtype)
        for c in range(self.n_roots):
            rows = self._extend(rows, c)
        return rows

    def chunks(self, prefix: Sequence[int] = (), chunk_rows: int = 1 << 18, budget: int | None = None) -> Iterator[np.ndarray]:
        """Yield blocks of complete maps whose first columns equal ``prefix``.

        ``prefix`` assigns the first elements of the search order (the roots).
        """
        rows = np.array([list(prefix)], dtype=self.dtype).reshape(1, len(prefix))
        for c in range(len(prefix)):
            for other, M in self.constraints[c]:
                if not M[rows[0, other], rows[0, c]]:
                    return
        n = len(self.order)
        produced = 0
        stack = [(rows, len(prefix))]
        while stack:
            rows, c = stack.pop()
            if c == n:
                yield rows[:, self.unpermute]
                continue
            rows = self._extend(rows, c)
            produced += rows.shape[0]
            self.nodes += rows.shape[0]
            if budget is not None and produced > budget:
                raise BudgetExceeded(budget)
            if rows.shape[0] == 0:
                continue
            for start in range(0, rows.shape[0], chunk_rows)[::-1]:
                stack.append((rows[start : start + chunk_rows], c + 1))

    def count(self, budget: int | None = None) -> int:
        return sum(chunk.shape[0] for chunk in self.chunks(budget=budget))


def is_thin(C: FiniteCategory) -> bool:
    return all(len(ms) == 1 for ms in C.hom.values())


def as_poset(X) -> Poset | None:
    """Return ``X`` as a (relative) poset when it is one, else ``None``."""
    if isinstance(X, Poset):
        return X
    rel = X if isinstance(X, RelativeCategory) else None
    C = to_category(X)
    if not is_thin(C) or any(a != b and (b, a) in C.hom for a, b in C.hom):
        return None
    if rel is not None:
        return thin_to_relative_poset(rel)
    return Poset(tuple(C.objects), frozenset(C.morphisms), C.labels)


def count_functors(A, C, relative: bool = False, budget: int | None = None) -> int:
    """Number of (relative) functors ``A -> C``; vectorized when both sides are posets."""
    P, Q = as_poset(A), as_poset(C)
    if P is not None and Q is not None and (not relative or (isinstance(P, RelativePoset) and isinstance(Q, RelativePoset))):
        return MonotoneMapTable(P, Q, relative=relative).count(budget)
    enum = enumerate_relative_functors if relative else enumerate_functors
    return len(enum(A, C, budget=budget or DEFAULT_BUDGET))
