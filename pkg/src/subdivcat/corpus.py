"""Small fixed posets and categories used by tests, the CLI and the acceptance run."""

from __future__ import annotations

from .relcat import FiniteCategory, Poset, RelativePoset, make_poset, make_relative_poset


def chain(k: int) -> Poset:
    """Linear order on ``k`` elements."""
    return make_poset(range(k), [(i, i + 1) for i in range(k - 1)])


def antichain(k: int) -> Poset:
    return make_poset(range(k), [])


def diamond() -> Poset:
    """Two minimal elements below two maximal ones: 0, 1 < 2, 3."""
    return make_poset(range(4), [(0, 2), (0, 3), (1, 2), (1, 3)])


def cospan() -> Poset:
    """0 < 2 > 1."""
    return make_poset(range(3), [(0, 2), (1, 2)])


def span() -> Poset:
    """0 > 1 < 2 read as 1 < 0, 1 < 2."""
    return make_poset(range(3), [(1, 0), (1, 2)])


def fence(k: int = 5) -> Poset:
    """Zigzag 0 < 1 > 2 < 3 > 4 ... on ``k`` elements."""
    rel = [(i, i + 1) if i % 2 == 0 else (i + 1, i) for i in range(k - 1)]
    return make_poset(range(k), rel)


def posets() -> dict[str, Poset]:
    """The fixed corpus of posets with at most five elements."""
    out: dict[str, Poset] = {}
    for k in range(1, 6):
        out[f"chain{k}"] = chain(k)
    for k in range(1, 4):
        out[f"antichain{k}"] = antichain(k)
    out["diamond"] = diamond()
    out["cospan"] = cospan()
    out["span"] = span()
    out["fence4"] = fence(4)
    out["fence5"] = fence(5)
    return out


def with_identity_we(P: Poset) -> RelativePoset:
    return RelativePoset(P.elements, P.leq, P.labels, frozenset((x, x) for x in P.elements))


def with_all_we(P: Poset) -> RelativePoset:
    return RelativePoset(P.elements, P.leq, P.labels, P.leq)


def relative_posets() -> dict[str, RelativePoset]:
    """Corpus posets with identity and with total weak equivalences, plus mixed examples."""
    out: dict[str, RelativePoset] = {}
    for name, P in posets().items():
        out[name + "-check"] = with_identity_we(P)
        out[name + "-hat"] = with_all_we(P)
    out["chain3-lower-we"] = make_relative_poset(range(3), [(0, 1), (1, 2)], [(0, 1)])
    out["diamond-left-we"] = make_relative_poset(range(4), [(0, 2), (0, 3), (1, 2), (1, 3)], [(0, 2), (1, 2)])
    out["cospan-one-we"] = make_relative_poset(range(3), [(0, 2), (1, 2)], [(1, 2)])
    return out


def parallel_pair() -> FiniteCategory:
    """Two objects with two distinct arrows ``0 -> 1``: loop-free but not a poset."""
    morphisms = ((0, 0), (1, 1), (0, 1), (0, 1))
    compose = {(0, 0): 0, (1, 1): 1}
    for f in (2, 3):
        compose[(f, 0)] = f
        compose[(1, f)] = f
    return FiniteCategory(2, morphisms, (0, 1), compose)


def categories() -> dict[str, FiniteCategory]:
    """Loop-free categories used for the Thomason comparison."""
    return {
        "[0]": chain(1).category,
        "[1]": chain(2).category,
        "[2]": chain(3).category,
        "cospan": cospan().category,
        "diamond": diamond().category,
    }
