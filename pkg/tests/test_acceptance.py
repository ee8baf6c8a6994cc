"""Acceptance criteria 1-10.  Every check is exact; each test prints one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys

import oracles
import pytest
from conftest import ACCEPTANCE_LINES, CONSTRUCTED

from subdivcat import corpus
from subdivcat.adjunction import (
    Adjunction,
    check_identities,
    compare_thomason,
    left_adjoint_relative,
    left_adjoint_thomason,
    relative_nerve,
    thomason_nerve,
)
from subdivcat.fpcat import materialize
from subdivcat.homology import homology
from subdivcat.relcat import (
    RelativeCategory,
    RelativePoset,
    chains_poset,
    is_isomorphism,
    make_check,
    make_hat,
    poset_iso,
    thin_to_relative_poset,
    validate,
)
from subdivcat.sset import boundary, delta, horn, nerve
from subdivcat.subdivision import xi, xi_check, xi_hat, xi_initial, xi_terminal

# independent enumeration of Hom(c K, X) and Hom(K, N X); rows K, columns X
HOM_COUNTS = {
    "delta0": {"0check": 1, "1check": 2, "1hat": 2, "2check": 3},
    "delta1": {"0check": 1, "1check": 3, "1hat": 13, "2check": 6},
    "delta2": {"0check": 1, "1check": 4, "1hat": 16887, "2check": 10},
    "boundary1": {"0check": 1, "1check": 4, "1hat": 4, "2check": 9},
    "horn21": {"0check": 1, "1check": 4, "1hat": 89, "2check": 10},
}

# |Cat(xi(n-hat), C)| for n = 0, 1, 2, frozen after the first agreeing run of both pipelines
THOMASON_COUNTS = {
    "[0]": (1, 1, 1),
    "[1]": (2, 13, 16887),
    "[2]": (3, 70, 17414257),
    "cospan": (3, 41, 77565),
    "diamond": (4, 116, 471524),
}

XI_CHECK_3 = 149  # objects of xi(3-check), frozen from the chains oracle


def _report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _oracle_of(P) -> tuple[list, set]:
    return list(P.elements), set(P.leq)


def test_criterion_1_subdivisions_are_chain_posets():
    failures = []
    for name, P in corpus.posets().items():
        R = corpus.with_identity_we(P)
        els, leq = _oracle_of(P)
        oracle_chains = oracles.comparable_subsets(els, leq)
        chain_sets = {frozenset(c) for c in oracle_chains}

        # terminal: element -> its chain, ordered by inclusion
        T = xi_terminal(R)
        to_set = {x: frozenset(T.element_meaning[i]) for i, x in enumerate(T.result.elements)}
        ok_t = set(to_set.values()) == chain_sets and len(to_set) == len(chain_sets)
        ok_t = ok_t and all(((a, b) in T.result.leq) == (to_set[a] <= to_set[b]) for a in to_set for b in to_set)

        # initial: same elements, reverse inclusion
        I = xi_initial(R)
        to_set_i = {x: frozenset(I.element_meaning[i]) for i, x in enumerate(I.result.elements)}
        ok_i = set(to_set_i.values()) == chain_sets
        ok_i = ok_i and all(((a, b) in I.result.leq) == (to_set_i[b] <= to_set_i[a]) for a in to_set_i for b in to_set_i)

        # two-fold: chains of chains, compared as sets of sets
        S = xi(R)
        oracle_cc = {frozenset(cc) for cc in oracles.comparable_subsets(list(chain_sets), {(a, b) for a in chain_sets for b in chain_sets if a <= b})}
        to_cc = {x: frozenset(frozenset(c) for c in S.element_meaning[i]) for i, x in enumerate(S.result.elements)}
        ok_x = set(to_cc.values()) == oracle_cc and len(to_cc) == len(oracle_cc)
        ok_x = ok_x and all(((a, b) in S.result.leq) == (to_cc[a] <= to_cc[b]) for a in to_cc for b in to_cc)

        # and the search-based isomorphisms exist and check out
        Q1 = chains_poset(P)
        Q2 = chains_poset(Q1)
        isos = [
            (T.result.underlying(), Q1),
            (I.result.underlying(), Q1.opposite()),
            (S.result.underlying(), Q2),
        ]
        ok_search = True
        for A, B in isos:
            f = poset_iso(A, B)
            ok_search = ok_search and f is not None and is_isomorphism(f, A, B)
        if not (ok_t and ok_i and ok_x and ok_search):
            failures.append(name)
    _report(1, not failures, f"xi_t, xi_i, xi vs chain posets on {len(corpus.posets())} corpus posets; failures: {failures or 'none'}")


def test_criterion_2_canonical_counts():
    counts = [len(xi_check(n)) for n in range(4)]
    els, leq = oracles.linear(3)
    cs, rel = oracles.chain_poset(els, leq)
    oracle = len(oracles.comparable_subsets(cs, rel))
    ok = counts == [1, 5, 25, XI_CHECK_3] and oracle == XI_CHECK_3
    _report(2, ok, f"|Ob xi(n-check)| = {counts} (expected [1, 5, 25, {XI_CHECK_3}]; chains oracle for n=3: {oracle})")


def test_criterion_3_worked_example():
    S = xi(make_check(1))
    a, b, c = (0,), (1,), (0, 1)
    name = {x: S.element_meaning[i] for i, x in enumerate(S.result.elements)}
    by_meaning = {m: x for x, m in name.items()}
    expected_objects = {(a,), (b,), (c,), (c, a), (c, b)}
    covers = {(name[x], name[y]) for x, y in S.result.covers}
    expected_covers = {((a,), (c, a)), ((c,), (c, a)), ((c,), (c, b)), ((b,), (c, b))}
    we_covers = {(name[x], name[y]) for x, y in S.result.covers if (x, y) in S.result.we}
    expected_we = {((a,), (c, a)), ((c,), (c, a)), ((b,), (c, b))}
    nonreflexive = {(x, y) for x, y in S.result.leq if x != y}
    ok = (
        set(name.values()) == expected_objects
        and covers == expected_covers
        and we_covers == expected_we
        and nonreflexive == {(by_meaning[p], by_meaning[q]) for p, q in expected_covers}
        and {(x, y) for x, y in S.result.we if x != y} == {(by_meaning[p], by_meaning[q]) for p, q in expected_we}
    )
    _report(3, ok, f"xi(1-check): 5 objects, covers {len(covers)}, we covers {len(we_covers)}, non-we cover {{c}}->{{cb}}")


def test_criterion_4_relative_nerve_values():
    N1 = relative_nerve(make_check(1), 1)
    N1h = relative_nerve(make_hat(1), 1)
    # independent product-search counts over all 2^5 assignments
    P = xi_check(1).result
    brute_check = oracles.count_monotone(list(P.elements), P.leq, [0, 1], make_check(1).leq, P.we, make_check(1).we)
    brute_hat = oracles.count_monotone(list(P.elements), P.leq, [0, 1], make_hat(1).leq, P.we, make_hat(1).we)
    got = (N1.size(0), N1.size(1), N1h.size(1))
    ok = got == (2, 3, 13) and (brute_check, brute_hat) == (3, 13)
    _report(4, ok, f"|N(1-check)_0|, |N(1-check)_1|, |N(1-hat)_1| = {got}; brute force {brute_check}, {brute_hat}")


@pytest.mark.slow
def test_criterion_5_thomason_agreement():
    cats = corpus.categories()
    problems = []
    for name, C in cats.items():
        report = compare_thomason(C, 2, budget=10**9)
        counts = tuple(r.functors for r in report.rows)
        if not report.match or counts != THOMASON_COUNTS[name]:
            problems.append(f"{name}: {[str(r) for r in report.rows]}")
        # second, element-level pipeline for n <= 1
        small = compare_thomason(C, 1, method="objects")
        if not small.match or tuple(r.functors for r in small.rows) != THOMASON_COUNTS[name][:2]:
            problems.append(f"{name} (objects): {[str(r) for r in small.rows]}")
        # brute-force oracle for n <= 1
        for n in (0, 1):
            P = xi_hat(n).result
            poset = thin_to_relative_poset(RelativeCategory(C, frozenset(C.identity)))
            brute = oracles.count_monotone(list(P.elements), P.leq, list(poset.elements), poset.leq)
            if brute != THOMASON_COUNTS[name][n]:
                problems.append(f"{name} n={n}: brute force {brute}")
    # plain-Python backtracking oracle for two n = 2 cases
    P = xi_hat(2).result
    for name in ("[1]", "cospan"):
        poset = thin_to_relative_poset(RelativeCategory(cats[name], frozenset(cats[name].identity)))
        brute = oracles.count_monotone_backtrack(list(P.elements), P.leq, list(poset.elements), poset.leq)
        if brute != THOMASON_COUNTS[name][2]:
            problems.append(f"{name} n=2: backtracking oracle {brute}")
    summary = ", ".join(f"{k}: {v}" for k, v in THOMASON_COUNTS.items())
    _report(5, not problems, f"Cat(xi n-hat, C) = (Ex^2 N C)_n with bijection, n<=2 [{summary}]; problems: {problems or 'none'}")


def _criterion_6_nerves():
    rel = corpus.relative_posets()
    out = []
    for name, X in rel.items():
        if name.endswith("-check") and len(X.elements) <= 4:
            out.append((f"N_xi({name}), d=3", relative_nerve(X, 3)))
    for name in ("chain2-hat", "antichain2-hat", "antichain3-hat", "chain3-lower-we", "cospan-one-we"):
        out.append((f"N_xi({name}), d=2", relative_nerve(rel[name], 2)))
    for name in ("cospan-hat", "diamond-hat", "chain3-hat", "fence4-hat", "diamond-left-we"):
        out.append((f"N_xi({name}), d=1", relative_nerve(rel[name], 1)))
    out.append(("N_T([0]), d=3", thomason_nerve(corpus.categories()["[0]"], 3)))
    out.append(("N_T([1]), d=2", thomason_nerve(corpus.categories()["[1]"], 2)))
    return out


def test_criterion_6_simplicial_identities():
    bad = []
    nerves = _criterion_6_nerves()
    for label, T in nerves:
        if check_identities(T):
            bad.append(label)
    _report(6, not bad, f"face/degeneracy identities on {len(nerves)} truncated nerves; failures: {bad or 'none'}")


def test_criterion_7_homology_invariance():
    bad = []
    diamond_text = None
    for name, P in corpus.posets().items():
        S = xi(corpus.with_identity_we(P)).result.underlying()
        h_sub, h = homology(nerve(S)), homology(nerve(P))
        betti = oracles.order_complex_betti(*_oracle_of(P)) if len(P.elements) <= 5 else None
        if h_sub != h or list(h.betti) != betti[: len(h.betti)] + [0] * (len(h.betti) - len(betti)):
            bad.append(f"{name}: {h_sub} vs {h} (oracle Betti {betti})")
        if name == "diamond":
            diamond_text = (str(h_sub), str(h))
    ok = not bad and diamond_text == ("H0=Z, H1=Z", "H0=Z, H1=Z")
    _report(7, ok, f"H(N xi P) = H(N P) on {len(corpus.posets())} posets; diamond: {diamond_text}; failures: {bad or 'none'}")


def test_criterion_8_left_adjoint_round_trip():
    results = []
    for n in range(4):
        m = materialize(left_adjoint_relative(delta(n)))
        P = thin_to_relative_poset(m.category)
        results.append(P is not None and poset_iso(P, xi_check(n).result, respect_we=True) is not None)
    m = materialize(left_adjoint_thomason(delta(1)))
    P = thin_to_relative_poset(m.category)
    hat_ok = P is not None and poset_iso(P, xi_hat(1).result, respect_we=True) is not None
    ok = all(results) and hat_ok
    _report(8, ok, f"c(Delta[n]) = xi(n-check) with we for n=0..3: {results}; c_T(Delta[1]) = xi(1-hat): {hat_ok}")


@pytest.mark.slow
def test_criterion_9_adjunction_bijection():
    Ks = {"delta0": delta(0), "delta1": delta(1), "delta2": delta(2), "boundary1": boundary(1), "horn21": horn(2, 1)}
    Xs = {"0check": make_check(0), "1check": make_check(1), "1hat": make_hat(1), "2check": make_check(2)}
    bad = []
    for kn, K in Ks.items():
        for xn, X in Xs.items():
            r = Adjunction(K, X).check()
            ok = (
                r["left"] == r["right"] == HOM_COUNTS[kn][xn]
                and r["forward_inverse"]
                and r["backward_inverse"]
                and r["backward_functors_valid"]
                and r["bijective"]
            )
            if not ok:
                bad.append(f"{kn},{xn}: {r}")
    _report(9, not bad, f"Hom(cK, X) = Hom(K, N X) with pointwise transposes on 5 x 4 pairs; failures: {bad or 'none'}")


def test_criterion_10_everything_constructed_validates():
    # runs last (see conftest): covers every relative category and relative poset built in the session
    objects = list(CONSTRUCTED.values())
    seen = set()
    bad = []
    for X in objects:
        key = (type(X).__name__, hash(X))
        if key in seen:
            continue
        seen.add(key)
        if validate(X):
            bad.append(X)
    n_rel = sum(isinstance(x, RelativeCategory) for x in objects)
    n_pos = sum(isinstance(x, RelativePoset) for x in objects)
    _report(10, not bad and bool(objects), f"{len(seen)} distinct of {n_rel} relative categories and {n_pos} relative posets valid; failures: {[str(validate(x)[0]) for x in bad[:3]] or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
