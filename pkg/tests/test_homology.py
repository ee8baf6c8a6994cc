from __future__ import annotations

import random

import oracles
from subdivcat import corpus
from subdivcat.homology import chain_complex, homology, smith_diagonal, sparse_smith_diagonal
from subdivcat.sset import boundary, delta, from_vertex_simplices, horn, nerve


def _rp2():
    # minimal 6-vertex triangulation of the projective plane
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)]
    faces = set()
    for t in tris:
        t = tuple(sorted(t))
        faces |= {t, t[:2], t[1:], (t[0], t[2]), (t[0],), (t[1],), (t[2],)}
    return from_vertex_simplices(faces)


def test_simplices_and_spheres():
    assert str(homology(delta(3))) == "H0=Z"
    assert str(homology(boundary(3))) == "H0=Z, H2=Z"
    assert str(homology(boundary(1))) == "H0=Z^2"
    assert str(homology(horn(3, 1))) == "H0=Z"


def test_projective_plane_has_torsion():
    h = homology(_rp2())
    assert str(h) == "H0=Z, H1=Z/2"
    assert h.torsion[1] == (2,)


def test_boundary_squares_to_zero():
    for K in (_rp2(), nerve(corpus.diamond()), nerve(corpus.parallel_pair())):
        assert chain_complex(K).check()


def test_diamond_is_a_circle():
    assert str(homology(nerve(corpus.diamond()))) == "H0=Z, H1=Z"
    assert str(homology(nerve(corpus.parallel_pair()))) == "H0=Z, H1=Z"


def test_betti_numbers_match_rational_oracle():
    for P in corpus.posets().values():
        h = homology(nerve(P))
        betti = oracles.order_complex_betti(list(P.elements), set(P.leq))
        assert list(h.betti) == betti


def test_smith_diagonal_examples():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert sorted(smith_diagonal([[4, 0], [0, 6]])) == [2, 12]


def test_sparse_and_dense_agree():
    rng = random.Random(7)
    for _ in range(100):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.choice([0, 0, 1, -1, 2, 3, -4]) for _ in range(c)] for _ in range(r)]
        cols = [{i: M[i][j] for i in range(r) if M[i][j]} for j in range(c)]
        dense = smith_diagonal(M)
        assert sorted(sparse_smith_diagonal(cols)) == sorted(dense)
        assert len(dense) == oracles.rational_rank(M)


def test_json_form():
    assert homology(boundary(2)).to_json() == {"betti": [1, 1], "torsion": [[], []]}
