"""Integer matrices and Smith normal form.

Arbitrary-precision Python ints throughout; intermediate swell in the
reduction is expected and harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_t = [tuple(other.entries[k][j] for k in range(other.rows)) for j in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols_t) for r in self.entries),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix(self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def mod(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(x % n for x in r) for r in self.entries))


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``left @ original @ right == diagonal`` with ``invariant_factors`` on the diagonal."""

    invariant_factors: tuple[int, ...]
    left_transform: IntMatrix
    right_transform: IntMatrix
    diagonal: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def snf(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are the smallest nonzero absolute value in the active block, ties
    broken by row-major position, so the transforms are reproducible.
    """
    rows, cols = m.rows, m.cols
    d = m.tolist()
    left = IntMatrix.identity(rows).tolist()
    right = IntMatrix.identity(cols).tolist()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
            left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        if k:
            for r in d:
                r[dst] += k * r[src]
            for r in right:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(d[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    if d[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, rows):
                    for j in range(t, cols):
                        if (i == t or j == t) and d[i][j]:
                            v = abs(d[i][j])
                            if best is None or v < best[0]:
                                best = (v, i, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column t are clear; enforce divisibility of the rest
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    factors = tuple(d[i][i] for i in range(min(rows, cols)) if d[i][i] != 0)
    return SnfDecomposition(
        factors,
        IntMatrix.from_rows(left, rows),
        IntMatrix.from_rows(right, cols),
        IntMatrix.from_rows(d, cols),
    )


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    return snf(m).invariant_factors


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [r[n:] for r in a]
    if any(x.denominator != 1 for r in out for x in r):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in r] for r in out], n)


def solve_integer(m: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution of ``m x = b``, or None when there is none."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    dec = snf(m)
    lb = dec.left_transform.apply(b)
    w = [0] * m.cols
    for i, x in enumerate(lb):
        if i < dec.rank:
            f = dec.invariant_factors[i]
            if x % f:
                return None
            w[i] = x // f
        elif x:
            return None
    return dec.right_transform.apply(w)


def solve_mod(m: IntMatrix, b: Sequence[int], modulus: int) -> tuple[int, ...] | None:
    """A solution of ``m x = b (mod modulus)`` reduced into ``[0, modulus)``."""
    aug = m.hstack(IntMatrix.from_rows(
        [[modulus * int(i == j) for j in range(m.rows)] for i in range(m.rows)], m.rows
    ))
    sol = solve_integer(aug, b)
    if sol is None:
        return None
    return tuple(x % modulus for x in sol[: m.cols])
