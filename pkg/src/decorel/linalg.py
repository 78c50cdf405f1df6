"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form of ``rows`` restricted to the first ``ncols`` pivot columns.

    Rows may be longer than ``ncols`` (an augmented right-hand side); those
    trailing entries are carried along but never pivoted on. Zero rows are
    dropped. Returns ``(rows, pivot_columns)``.

    Rows are held sparsely during elimination; the systems met here have a
    handful of nonzeros per row.
    """
    width = len(rows[0]) if rows else ncols
    live = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in rows]
    live = [r for r in live if r]
    done: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    for c in range(ncols):
        cands = [r for r in live if c in r]
        if not cands:
            continue
        prow = min(cands, key=len)
        live = [r for r in live if r is not prow]
        p = prow[c]
        if p != 1:
            prow = {j: x / p for j, x in prow.items()}
        for group in (live, done):
            for k, r in enumerate(group):
                f = r.get(c)
                if f is None:
                    continue
                new = dict(r)
                for j, x in prow.items():
                    v = new.get(j, 0) - f * x
                    if v:
                        new[j] = v
                    else:
                        new.pop(j, None)
                group[k] = new
        live = [r for r in live if r]
        done.append(prow)
        pivots.append(c)

    def dense(r):
        out = [Fraction(0)] * width
        for j, x in r.items():
            out[j] = x
        return out

    # rows with no pivot survive only if their augmented part is nonzero
    return [dense(r) for r in done] + [dense(r) for r in live], pivots


def solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` with free variables set to zero
    in the particular solution, or ``None`` when the system is inconsistent.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug, n)
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in red):
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[fcol]
        basis.append(v)
    return x, basis
