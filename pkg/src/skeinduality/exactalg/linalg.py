"""Exact Gaussian elimination over the function field Q(A)."""

from __future__ import annotations

from typing import Sequence

from .ratfunc import ONE, ZERO, RatFunc, as_ratfunc

Matrix = Sequence[Sequence[RatFunc]]


class SingularSystemError(ValueError):
    pass


def rref(m: Matrix) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [[as_ratfunc(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_and_rank_over_ratfunc(m: Matrix, cols: int | None = None) -> tuple[int, list[list[RatFunc]]]:
    """Rank and a kernel basis of ``m`` acting on column vectors.

    ``cols`` is only needed for matrices with zero rows.
    """
    red, pivots = rref(m)
    n = cols if cols is not None else (len(m[0]) if m else 0)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return len(pivots), basis


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(m: Matrix, b: Sequence[RatFunc]) -> list[RatFunc]:
    """The unique solution of ``m x = b``; raises unless it exists and is unique."""
    n = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if n in pivots:
        raise SingularSystemError("inconsistent linear system")
    if len(pivots) < n:
        raise SingularSystemError("linear system has no unique solution")
    x = [ZERO] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return x


def det(m: Matrix) -> RatFunc:
    """Determinant by cofactor expansion; intended for small test matrices."""
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return as_ratfunc(m[0][0])
    total = ZERO
    for j in range(n):
        if as_ratfunc(m[0][j]).is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in (list(r) for r in m[1:])]
        term = as_ratfunc(m[0][j]) * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
