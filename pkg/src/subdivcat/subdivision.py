"""Terminal, initial and two-fold subdivision of relative posets.

Each subdivision has the nonempty chains of its input as elements.  Element
``i`` of the result stands for the chain ``element_meaning[i]``.  For the
two-fold subdivision that is a chain of chains of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .relcat import Functor, Poset, RelativePoset, chains, make_check, make_hat

Which = Literal["terminal", "initial", "twofold"]


@dataclass(frozen=True)
class SubdividedPoset:
    result: RelativePoset
    element_meaning: tuple

    def __len__(self) -> int:
        return len(self.result.elements)


@dataclass(frozen=True)
class PosetMap:
    """An order-preserving map; ``images[i]`` is the image of ``source.elements[i]``."""

    source: Poset
    target: Poset
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[self.source.index[x]]

    def after(self, other: PosetMap) -> PosetMap:
        """``self . other``."""
        return PosetMap(other.source, self.target, tuple(self(y) for y in other.images))

    def is_monotone(self) -> bool:
        return all((self(a), self(b)) in self.target.leq for a, b in self.source.leq)

    def preserves_we(self) -> bool:
        if not isinstance(self.source, RelativePoset) or not isinstance(self.target, RelativePoset):
            return True
        return all((self(a), self(b)) in self.target.we for a, b in self.source.we)

    def functor(self) -> Functor:
        """The induced functor of (relative) categories."""
        src, tgt = self.source, self.target
        obj = tuple(tgt.index[y] for y in self.images)
        mor = tuple(tgt.morphism_id[(self(a), self(b))] for a, b in sorted(src.leq))
        if isinstance(src, RelativePoset) and isinstance(tgt, RelativePoset):
            return Functor(obj, mor, src.relative_category, tgt.relative_category)
        return Functor(obj, mor, src.category, tgt.category)


def identity_map(P: Poset) -> PosetMap:
    return PosetMap(P, P, P.elements)


def _chain_data(P: RelativePoset):
    cs = chains(P)
    sets = [frozenset(c) for c in cs]
    by_vertex: dict[int, set[int]] = {}
    for i, s in enumerate(sets):
        for x in s:
            by_vertex.setdefault(x, set()).add(i)
    inclusions = []
    for i, s in enumerate(sets):
        for j in sorted(set.intersection(*(by_vertex[x] for x in s))):
            inclusions.append((i, j))
    return cs, inclusions


def xi_terminal(P: RelativePoset) -> SubdividedPoset:
    """Chains ordered by inclusion; ``c1 <= c2`` is a weak equivalence when
    ``last(c1) -> last(c2)`` is one in ``P``."""
    cs, inclusions = _chain_data(P)
    leq = frozenset(inclusions)
    we = frozenset((i, j) for i, j in inclusions if (cs[i][-1], cs[j][-1]) in P.we)
    return SubdividedPoset(RelativePoset(tuple(range(len(cs))), leq, tuple(cs), we), tuple(cs))


def xi_initial(P: RelativePoset) -> SubdividedPoset:
    """Chains ordered by reverse inclusion; ``c2 -> c1`` (with ``c1`` a subchain
    of ``c2``) is a weak equivalence when ``first(c2) -> first(c1)`` is one in ``P``."""
    cs, inclusions = _chain_data(P)
    leq = frozenset((j, i) for i, j in inclusions)
    we = frozenset((j, i) for i, j in inclusions if (cs[j][0], cs[i][0]) in P.we)
    return SubdividedPoset(RelativePoset(tuple(range(len(cs))), leq, tuple(cs), we), tuple(cs))


def xi(P: RelativePoset) -> SubdividedPoset:
    """Two-fold subdivision: the terminal subdivision of the initial subdivision."""
    inner = xi_initial(P)
    outer = xi_terminal(inner.result)
    meaning = tuple(tuple(inner.element_meaning[i] for i in c) for c in outer.element_meaning)
    R = outer.result
    return SubdividedPoset(RelativePoset(R.elements, R.leq, meaning, R.we), meaning)


_SUBDIVIDE = {"terminal": xi_terminal, "initial": xi_initial, "twofold": xi}


def subdivide(P: RelativePoset, which: Which) -> SubdividedPoset:
    return _SUBDIVIDE[which](P)


def _image_chain(f: PosetMap, c: tuple) -> tuple:
    # f is monotone, so sorting by position in c is already an order on the image
    out: list[int] = []
    for x in c:
        y = f(x)
        if not out or out[-1] != y:
            out.append(y)
    return tuple(out)


def _chain_map(f: PosetMap, S: SubdividedPoset, T: SubdividedPoset) -> PosetMap:
    lookup = {c: i for i, c in enumerate(T.element_meaning)}
    images = tuple(lookup[_image_chain(f, c)] for c in S.element_meaning)
    return PosetMap(S.result, T.result, images)


def xi_on_map(f: PosetMap, which: Which = "twofold") -> PosetMap:
    """Act on a map of relative posets by sending each chain to its image chain.

    Returns the induced map between the subdivided posets; use
    :meth:`PosetMap.functor` for the corresponding relative functor.
    """
    if which == "twofold":
        inner = _chain_map(f, xi_initial(f.source), xi_initial(f.target))
        return _chain_map(inner, xi_terminal(inner.source), xi_terminal(inner.target))
    S, T = subdivide(f.source, which), subdivide(f.target, which)
    return _chain_map(f, S, T)


# --------------------------------------------------------------------------
# cosimplicial structure
# --------------------------------------------------------------------------


def coface(n: int, i: int) -> tuple[int, ...]:
    """The injection [n-1] -> [n] skipping ``i``."""
    return tuple(k if k < i else k + 1 for k in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """The surjection [n+1] -> [n] hitting ``j`` twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


@lru_cache(maxsize=None)
def xi_check(n: int) -> SubdividedPoset:
    return xi(make_check(n))


@lru_cache(maxsize=None)
def xi_hat(n: int) -> SubdividedPoset:
    return xi(make_hat(n))


@lru_cache(maxsize=None)
def xi_simplicial_operator(m: int, n: int, alpha: tuple[int, ...], hat: bool = False) -> PosetMap:
    """``xi`` applied to the monotone map ``alpha: [m] -> [n]``, as a map of results."""
    make = make_hat if hat else make_check
    f = PosetMap(make(m), make(n), tuple(alpha))
    return xi_on_map(f, "twofold")


def monotone_sequences(m: int, n: int) -> list[tuple[int, ...]]:
    """All monotone maps [m] -> [n] as value tuples, lexicographically."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], lo: int) -> None:
        if len(prefix) == m + 1:
            out.append(prefix)
            return
        for v in range(lo, n + 1):
            rec(prefix + (v,), v)

    rec((), 0)
    return out

