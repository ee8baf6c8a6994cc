from __future__ import annotations

import pytest

from subdivcat import corpus
from subdivcat.adjunction import left_adjoint_relative, left_adjoint_thomason
from subdivcat.fpcat import (
    CatPresentation,
    CyclicityReport,
    Diagram,
    PathBoundTooSmall,
    Relation,
    colimit_presentation,
    materialize,
    presentation_of,
)
from subdivcat.relcat import make_check, poset_iso, thin_to_relative_poset, validate
from subdivcat.sset import FiniteSimplicialSet, boundary, delta, generator, horn
from subdivcat.subdivision import PosetMap, xi_check, xi_hat


def test_poset_presentation_round_trip():
    for X in corpus.relative_posets().values():
        m = materialize(presentation_of(X))
        P = thin_to_relative_poset(m.category)
        assert P is not None
        assert poset_iso(P, X, respect_we=True) is not None


def test_commutative_square_is_thin():
    # two paths 0 -> 3 identified by a relation
    p = CatPresentation(4, ((0, 1), (1, 3), (0, 2), (2, 3)), (Relation(0, 3, (0, 1), (2, 3)),))
    m = materialize(p)
    assert len(m.category.morphisms) == 4 + 4 + 1
    assert m.morphism_of_path(0, (0, 1)) == m.morphism_of_path(0, (2, 3))


def test_free_square_is_not_thin():
    p = CatPresentation(4, ((0, 1), (1, 3), (0, 2), (2, 3)))
    m = materialize(p)
    assert len(m.category.morphisms) == 4 + 4 + 2
    assert not validate(m.category)


def test_directed_cycle_is_reported():
    r = materialize(CatPresentation(2, ((0, 1), (1, 0))))
    assert isinstance(r, CyclicityReport)
    assert sorted(r.cycle) == [0, 1]


def test_loop_edge_is_reported():
    # an arrow whose ends were glued together, as in the coequalizer of its endpoints
    p = CatPresentation(1, ((0, 0),))
    assert isinstance(materialize(p), CyclicityReport)


def test_path_bound():
    p = presentation_of(make_check(3))
    with pytest.raises(PathBoundTooSmall):
        materialize(p, path_len_bound=2)
    assert materialize(p, path_len_bound=3).category.n_objects == 4


def test_invalid_presentation_rejected():
    with pytest.raises(ValueError):
        materialize(CatPresentation(2, ((0, 5),)))
    with pytest.raises(ValueError):
        materialize(CatPresentation(2, ((0, 1),), (Relation(0, 1, (0,), (0, 0)),)))


def test_colimit_of_pushout_of_intervals():
    # glue two copies of 1-check along their top vertex: a cospan
    pt = make_check(0)
    diagram = Diagram(
        (pt, make_check(1), make_check(1)),
        ((0, 1, PosetMap(pt, make_check(1), (1,))), (0, 2, PosetMap(pt, make_check(1), (1,)))),
    )
    m = materialize(colimit_presentation(diagram).presentation)
    P = thin_to_relative_poset(m.category)
    assert poset_iso(P, corpus.with_identity_we(corpus.cospan()), respect_we=True) is not None


def test_left_adjoint_sizes():
    m = materialize(left_adjoint_relative(horn(2, 1)))
    C = m.category
    assert (C.n_objects, len(C.morphisms), len(C.we)) == (9, 17, 15)
    assert materialize(left_adjoint_relative(delta(2))).category.n_objects == len(xi_check(2))
    assert materialize(left_adjoint_thomason(boundary(2))).category.n_objects == 12


def test_left_adjoint_of_circle_is_finite():
    # one vertex, one loop edge: the subdivided edge keeps the ends apart
    S1 = FiniteSimplicialSet((1, 1), (((),), ((generator(0, 0), generator(0, 0)),)))
    for build in (left_adjoint_relative, left_adjoint_thomason):
        m = materialize(build(S1))
        assert not isinstance(m, CyclicityReport)
        assert m.category.n_objects == 4
        assert not validate(m.category)


def test_thomason_left_adjoint_has_all_we():
    m = materialize(left_adjoint_thomason(delta(1)))
    assert m.category.we == frozenset(range(len(m.category.morphisms)))
    assert poset_iso(thin_to_relative_poset(m.category), xi_hat(1).result, respect_we=True) is not None
