"""Integral homology of finite simplicial sets via Smith normal form.

Chains are normalized: one basis element per nondegenerate generator and
degenerate faces contribute zero.  Boundary matrices are stored sparsely by
column.  Entries are Python ints, so coefficient growth never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sset import FiniteSimplicialSet

Matrix = list[list[int]]
Column = dict[int, int]  # row -> nonzero coefficient


@dataclass(frozen=True)
class ChainComplex:
    ranks: tuple[int, ...]
    # boundaries[k] maps C_k -> C_{k-1}, one sparse column per generator; boundaries[0] is empty
    boundaries: tuple[tuple[Column, ...], ...]

    def dense(self, k: int) -> Matrix:
        rows = self.ranks[k - 1] if k > 0 else 0
        M = [[0] * self.ranks[k] for _ in range(rows)]
        for j, col in enumerate(self.boundaries[k]):
            for i, v in col.items():
                M[i][j] = v
        return M

    def check(self) -> bool:
        """``d_{k-1} d_k == 0`` for every ``k``."""
        for k in range(2, len(self.ranks)):
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc: dict[int, int] = {}
                for i, v in col.items():
                    for r, w in lower[i].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    return False
        return True


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, k: int) -> str:
        parts = []
        b = self.betti[k]
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts.extend(f"Z/{t}" for t in self.torsion[k])
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        groups = [f"H{k}={self.group(k)}" for k in range(len(self.betti)) if self.group(k) != "0"]
        return ", ".join(groups) if groups else "0"

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def chain_complex(K: FiniteSimplicialSet) -> ChainComplex:
    ranks = tuple(K.counts)
    boundaries: list[tuple[Column, ...]] = [()]
    for k in range(1, len(ranks)):
        cols = []
        for g in range(ranks[k]):
            col: Column = {}
            for i, y in enumerate(K.faces[k][g]):
                if y.nondegenerate:
                    col[y.gen] = col.get(y.gen, 0) + (-1 if i % 2 else 1)
            cols.append({r: v for r, v in col.items() if v})
        boundaries.append(tuple(cols))
    return ChainComplex(ranks, tuple(boundaries))


def smith_diagonal(M: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of a dense ``M``.

    Pivots are chosen by smallest absolute value among the remaining entries.
    """
    A = [row[:] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block, else fold an offending row in
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # a smaller remainder appeared in row/column t: move it to the pivot spot
            best = min(
                [(abs(A[i][t]), i, t) for i in range(t + 1, rows) if A[i][t]]
                + [(abs(A[t][j]), t, j) for j in range(t + 1, cols) if A[t][j]]
            )
            _, i, j = best
            if j == t:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def sparse_smith_diagonal(columns: tuple[Column, ...] | list[Column]) -> list[int]:
    """Smith diagonal of a sparse matrix given by columns.

    Unit entries are the smallest possible pivots, so they are eliminated
    first (ties broken by shortest row to limit fill-in).  Each unit pivot
    splits off a 1 on the diagonal.  Whatever is left has no unit entries and
    goes through :func:`smith_diagonal`.
    """
    cols = [dict(c) for c in columns]
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(range(len(cols)), key=lambda j: len(cols[j])):
            col = cols[c]
            unit_rows = [i for i, v in col.items() if v in (1, -1)]
            if not unit_rows:
                continue
            p = min(unit_rows, key=lambda i: (len(rows[i]), i))
            u = col[p]
            for i in [i for i in col if i != p]:
                factor = col[i] * u
                for c2 in rows[p]:
                    target = cols[c2]
                    v = target.get(i, 0) - factor * target[p]
                    if v:
                        if i not in target:
                            rows[i].add(c2)
                        target[i] = v
                    elif i in target:
                        del target[i]
                        rows[i].discard(c2)
            for c2 in rows.pop(p):
                del cols[c2][p]
            units += 1
            progress = True
    live_cols = [j for j, col in enumerate(cols) if col]
    live_rows = sorted({i for j in live_cols for i in cols[j]})
    if not live_cols:
        return [1] * units
    index = {i: r for r, i in enumerate(live_rows)}
    M = [[0] * len(live_cols) for _ in live_rows]
    for jj, j in enumerate(live_cols):
        for i, v in cols[j].items():
            M[index[i]][jj] = v
    return [1] * units + smith_diagonal(M)


def homology(K: FiniteSimplicialSet) -> HomologyResult:
    C = chain_complex(K)
    n = len(C.ranks)
    diags = [[]] + [sparse_smith_diagonal(C.boundaries[k]) for k in range(1, n)] + [[]]
    betti, torsion = [], []
    for k in range(n):
        rank_out = len(diags[k])  # rank of d_k
        rank_in = len(diags[k + 1])  # rank of d_{k+1}
        betti.append(C.ranks[k] - rank_out - rank_in)
        torsion.append(tuple(sorted(d for d in diags[k + 1] if d > 1)))
    return HomologyResult(tuple(betti), tuple(torsion))
