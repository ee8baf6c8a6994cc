from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from subdivcat import corpus
from subdivcat.relcat import make_check, make_hat, make_relative_poset, validate
from subdivcat.subdivision import (
    PosetMap,
    codegeneracy,
    coface,
    identity_map,
    monotone_sequences,
    subdivide,
    xi,
    xi_check,
    xi_hat,
    xi_initial,
    xi_on_map,
    xi_simplicial_operator,
    xi_terminal,
)


def _meaning(S):
    return {x: S.element_meaning[i] for i, x in enumerate(S.result.elements)}


def test_terminal_we_uses_last_elements():
    X = make_relative_poset([0, 1, 2], [(0, 1), (1, 2)], we=[(1, 2)])
    S = xi_terminal(X)
    m = _meaning(S)
    for a, b in S.result.leq:
        assert set(m[a]) <= set(m[b])
        assert ((a, b) in S.result.we) == ((m[a][-1], m[b][-1]) in X.we)


def test_initial_we_uses_first_elements():
    X = make_relative_poset([0, 1, 2], [(0, 1), (1, 2)], we=[(0, 1)])
    S = xi_initial(X)
    m = _meaning(S)
    for a, b in S.result.leq:
        assert set(m[b]) <= set(m[a])
        assert ((a, b) in S.result.we) == ((m[a][0], m[b][0]) in X.we)


def test_hat_subdivisions_have_all_we():
    for n in range(3):
        S = xi_hat(n).result
        assert S.we == S.leq


def test_every_subdivision_validates():
    for X in corpus.relative_posets().values():
        for which in ("terminal", "initial", "twofold"):
            assert not validate(subdivide(X, which).result)


def test_small_xi_sizes():
    assert [len(xi_check(n)) for n in range(3)] == [1, 5, 25]
    assert len(xi(corpus.with_identity_we(corpus.diamond()))) == len(xi(corpus.with_all_we(corpus.diamond())))


def test_coface_and_codegeneracy():
    assert coface(2, 0) == (1, 2)
    assert coface(2, 2) == (0, 1)
    assert codegeneracy(1, 0) == (0, 0, 1)
    assert len(monotone_sequences(1, 2)) == 6


def test_xi_preserves_identities():
    for n in range(3):
        f = xi_simplicial_operator(n, n, tuple(range(n + 1)))
        assert f.images == identity_map(f.source).images


def test_xi_simplicial_operators_are_relative():
    for m, n in itertools.product(range(3), repeat=2):
        for alpha in monotone_sequences(m, n):
            for hat in (False, True):
                f = xi_simplicial_operator(m, n, alpha, hat)
                assert f.is_monotone() and f.preserves_we()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_xi_is_functorial(m, n, k, data):
    alpha = data.draw(st.sampled_from(monotone_sequences(m, n)))
    beta = data.draw(st.sampled_from(monotone_sequences(n, k)))
    composite = tuple(beta[a] for a in alpha)
    lhs = xi_simplicial_operator(n, k, beta).after(xi_simplicial_operator(m, n, alpha))
    rhs = xi_simplicial_operator(m, k, composite)
    assert lhs.images == rhs.images


def test_xi_on_map_gives_relative_functor():
    f = PosetMap(make_hat(2), make_hat(1), (0, 0, 1))
    g = xi_on_map(f)
    F = g.functor()
    assert F.source == xi_hat(2).result.relative_category
    # the chain images follow the element images
    for which in ("terminal", "initial"):
        h = xi_on_map(f, which)
        S, T = subdivide(f.source, which), subdivide(f.target, which)
        for i, c in enumerate(S.element_meaning):
            img = T.element_meaning[T.result.index[h.images[i]]]
            assert set(img) == {f(x) for x in c}


def test_xi_on_non_relative_map_is_not_relative():
    f = PosetMap(make_hat(1), make_check(1), (0, 1))
    assert not f.preserves_we()
    assert not xi_on_map(f).preserves_we()
