"""Brute-force reference computations sharing no code with the package kernels."""

from __future__ import annotations

import itertools
from fractions import Fraction


def comparable_subsets(elements, leq) -> list[tuple]:
    """Nonempty totally ordered subsets, each listed from bottom to top."""
    ext = sorted(elements, key=lambda x: sum((y, x) in leq for y in elements))
    out: list[tuple] = []

    def grow(c: list, start: int) -> None:
        out.append(tuple(c))
        for j in range(start, len(ext)):
            z = ext[j]
            if z != c[-1] and (c[-1], z) in leq:
                grow(c + [z], j + 1)

    for i, x in enumerate(ext):
        grow([x], i + 1)
    return out


def chain_poset(elements, leq) -> tuple[list, set]:
    """Chains ordered by inclusion, as (elements, leq) with chains as the elements."""
    cs = comparable_subsets(elements, leq)
    rel = {(a, b) for a in cs for b in cs if set(a) <= set(b)}
    return cs, rel


def linear(n: int) -> tuple[list, set]:
    els = list(range(n + 1))
    return els, {(a, b) for a in els for b in els if a <= b}


def count_monotone(src_elements, src_leq, tgt_elements, tgt_leq, src_we=(), tgt_we=()) -> int:
    """Count maps preserving the order (and the given weak equivalences) by full product search."""
    rel = [(a, b) for a, b in src_leq if a != b]
    we = [(a, b) for a, b in src_we if a != b]
    n = 0
    for images in itertools.product(tgt_elements, repeat=len(src_elements)):
        f = dict(zip(src_elements, images))
        if all((f[a], f[b]) in tgt_leq for a, b in rel) and all((f[a], f[b]) in tgt_we for a, b in we):
            n += 1
    return n


def count_monotone_backtrack(src_elements, src_leq, tgt_elements, tgt_leq) -> int:
    """Count order-preserving maps by plain backtracking along a linear extension."""
    order = sorted(src_elements, key=lambda x: sum((y, x) in src_leq for y in src_elements))
    below = {x: [y for y in order[: order.index(x)] if (y, x) in src_leq] for x in order}
    above = {x: [y for y in order[: order.index(x)] if (x, y) in src_leq and x != y] for x in order}
    up = {q: [r for r in tgt_elements if (q, r) in tgt_leq] for q in tgt_elements}
    f: dict = {}

    def rec(i: int) -> int:
        if i == len(order):
            return 1
        x = order[i]
        total = 0
        cands = up[f[below[x][0]]] if below[x] else tgt_elements
        for q in cands:
            if all((f[y], q) in tgt_leq for y in below[x]) and all((q, f[y]) in tgt_leq for y in above[x]):
                f[x] = q
                total += rec(i + 1)
        f.pop(x, None)
        return total

    return rec(0)


def is_order_iso(f: dict, P: tuple, Q: tuple) -> bool:
    (pe, pl), (qe, ql) = P, Q
    if sorted(f) != sorted(pe) or sorted(f.values()) != sorted(qe):
        return False
    return all(((a, b) in pl) == ((f[a], f[b]) in ql) for a in pe for b in pe)


def isomorphic_by_permutation(P: tuple, Q: tuple) -> bool:
    """Exhaustive isomorphism test for tiny posets."""
    (pe, pl), (qe, ql) = P, Q
    if len(pe) != len(qe) or len(pl) != len(ql):
        return False
    return any(is_order_iso(dict(zip(pe, perm)), P, Q) for perm in itertools.permutations(qe))


def rational_rank(M: list[list[int]]) -> int:
    A = [[Fraction(v) for v in row] for row in M]
    rank, rows = 0, len(A)
    cols = len(A[0]) if rows else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r][c] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        for r in range(rows):
            if r != rank and A[r][c] != 0:
                q = A[r][c] / A[rank][c]
                A[r] = [x - q * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def order_complex_betti(elements, leq) -> list[int]:
    """Rational Betti numbers of the order complex, from its simplices directly."""
    simplices = comparable_subsets(elements, leq)
    by_dim: dict[int, list[tuple]] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    index = {k: {s: i for i, s in enumerate(v)} for k, v in by_dim.items()}
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        M = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, s in enumerate(by_dim[k]):
            for i in range(len(s)):
                M[index[k - 1][s[:i] + s[i + 1 :]]][j] = (-1) ** i
        ranks[k] = rational_rank(M)
    return [len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]
