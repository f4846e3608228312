"""The Temperley-Lieb category over Q(A).

A morphism ``m -> n`` is a linear combination of planar matchings of ``m``
bottom points and ``n`` top points. Boundary points are numbered bottom
``0..m-1`` left to right, then top ``m..m+n-1`` left to right. Closed loops
evaluate to ``DELTA = -A^2 - A^-2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .exactalg import DELTA, ONE, ZERO, RatFunc, as_ratfunc, loop_chebyshev


class BoundaryMismatch(ValueError):
    pass


def _cyclic_position(p: int, m: int, n: int) -> int:
    # counterclockwise around the rectangle: bottom left->right, top right->left
    return p if p < m else m + (n - 1 - (p - m))


@dataclass(frozen=True, order=True)
class PlanarMatching:
    """A non-crossing perfect matching; ``pairs`` is sorted with ``i < j``."""

    m: int
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if (self.m + self.n) % 2:
            raise ValueError("m + n must be even")
        seen = sorted(x for p in self.pairs for x in p)
        if seen != list(range(self.m + self.n)):
            raise ValueError(f"not a perfect matching on {self.m}+{self.n} points: {self.pairs}")
        if any(a >= b for a, b in self.pairs) or list(self.pairs) != sorted(self.pairs):
            raise ValueError("pairs must be sorted (i, j) with i < j")
        cyc = [tuple(sorted((_cyclic_position(a, self.m, self.n), _cyclic_position(b, self.m, self.n)))) for a, b in self.pairs]
        for a, b in cyc:
            for c, d in cyc:
                if a < c < b < d:
                    raise ValueError(f"matching {self.pairs} is not planar")

    @classmethod
    def from_pairs(cls, m: int, n: int, pairs: Iterable[tuple[int, int]]) -> "PlanarMatching":
        return cls(m, n, tuple(sorted(tuple(sorted(p)) for p in pairs)))

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def __str__(self):
        def name(p):
            return f"b{p}" if p < self.m else f"t{p - self.m}"

        return "[" + " ".join(f"{name(a)}-{name(b)}" for a, b in self.pairs) + "]"


@lru_cache(maxsize=None)
def basis(m: int, n: int) -> tuple[PlanarMatching, ...]:
    """All planar matchings ``m -> n`` in a fixed order."""
    if (m + n) % 2:
        return ()
    total = m + n
    # enumerate non-crossing matchings in cyclic order, then relabel
    order = sorted(range(total), key=lambda p: _cyclic_position(p, m, n))

    def rec(points: tuple[int, ...]):
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inner = points[1:k]
            outer = points[k + 1 :]
            for left in rec(inner):
                for right in rec(outer):
                    yield ((first, points[k]),) + left + right

    out = [PlanarMatching.from_pairs(m, n, ((order[a], order[b]) for a, b in pairing)) for pairing in rec(tuple(range(total)))]
    return tuple(sorted(out))


@lru_cache(maxsize=1 << 16)
def _compose_matchings(f: PlanarMatching, g: PlanarMatching) -> tuple[PlanarMatching, int]:
    """Stack ``g`` on top of ``f``; returns the matching and the loop count."""
    m, n, p = f.m, f.n, g.n
    # nodes: f bottom i -> i, middle j -> m + j, g top k -> m + n + k
    parent = list(range(m + n + p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in f.pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    for a, b in g.pairs:
        ra, rb = find(m + a), find(m + b)
        if ra != rb:
            parent[ra] = rb

    ends: dict[int, list[int]] = {}
    for x in list(range(m)) + list(range(m + n, m + n + p)):
        ends.setdefault(find(x), []).append(x if x < m else x - n)
    loops = len({find(m + j) for j in range(n)} - set(ends))
    return PlanarMatching.from_pairs(m, p, (tuple(v) for v in ends.values())), loops


class TlElement:
    """A morphism ``m -> n``: a finite map from PlanarMatching to RatFunc."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Mapping[PlanarMatching, object] | None = None):
        self.m = m
        self.n = n
        clean = {}
        for mat, c in (terms or {}).items():
            if (mat.m, mat.n) != (m, n):
                raise BoundaryMismatch(f"matching {mat} is not a {m}->{n} diagram")
            c = as_ratfunc(c)
            if not c.is_zero():
                clean[mat] = c
        self.terms: dict[PlanarMatching, RatFunc] = clean

    @classmethod
    def from_matching(cls, mat: PlanarMatching, coeff=ONE) -> "TlElement":
        return cls(mat.m, mat.n, {mat: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mat: PlanarMatching) -> RatFunc:
        return self.terms.get(mat, ZERO)

    def coordinates(self) -> list[RatFunc]:
        """Coefficients in the order of ``basis(m, n)``."""
        return [self.coefficient(b) for b in basis(self.m, self.n)]

    def _check_same(self, other: "TlElement"):
        if (self.m, self.n) != (other.m, other.n):
            raise BoundaryMismatch(f"{self.m}->{self.n} vs {other.m}->{other.n}")

    def __add__(self, other: "TlElement") -> "TlElement":
        self._check_same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return TlElement(self.m, self.n, out)

    def __neg__(self) -> "TlElement":
        return TlElement(self.m, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TlElement") -> "TlElement":
        return self + (-other)

    def scale(self, c) -> "TlElement":
        c = as_ratfunc(c)
        return TlElement(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "TlElement":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TlElement):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def then(self, other: "TlElement") -> "TlElement":
        return compose(self, other)

    def __repr__(self):
        return f"TlElement({self.m}->{self.n}, {len(self.terms)} terms)"

    def __str__(self):
        return format_element(self)


def compose(f: TlElement, g: TlElement) -> TlElement:
    """``f: m -> n`` followed by ``g: n -> p`` (g stacked on top of f)."""
    if f.n != g.m:
        raise BoundaryMismatch(f"cannot compose {f.m}->{f.n} with {g.m}->{g.n}")
    acc: dict[PlanarMatching, dict[int, RatFunc]] = {}
    for fm, fc in f.terms.items():
        for gm, gc in g.terms.items():
            mat, loops = _compose_matchings(fm, gm)
            bucket = acc.setdefault(mat, {})
            bucket[loops] = bucket.get(loops, ZERO) + fc * gc
    out = {}
    for mat, bucket in acc.items():
        total = ZERO
        for loops, c in bucket.items():
            total = total + c * _delta_power(loops)
        out[mat] = total
    return TlElement(f.m, g.n, out)


@lru_cache(maxsize=None)
def _delta_power(k: int) -> RatFunc:
    return DELTA**k


def _shift_matching(mat: PlanarMatching, bottom_off: int, top_off: int, m_total: int) -> list[tuple[int, int]]:
    def relabel(p):
        return p + bottom_off if p < mat.m else m_total + top_off + (p - mat.m)

    return [(relabel(a), relabel(b)) for a, b in mat.pairs]


def tensor_matchings(a: PlanarMatching, b: PlanarMatching) -> PlanarMatching:
    m = a.m + b.m
    pairs = _shift_matching(a, 0, 0, m) + _shift_matching(b, a.m, a.n, m)
    return PlanarMatching.from_pairs(m, a.n + b.n, pairs)


def tensor(f: TlElement, g: TlElement) -> TlElement:
    """Horizontal juxtaposition, ``f`` on the left."""
    out: dict[PlanarMatching, RatFunc] = {}
    for fm, fc in f.terms.items():
        for gm, gc in g.terms.items():
            mat = tensor_matchings(fm, gm)
            out[mat] = out.get(mat, ZERO) + fc * gc
    return TlElement(f.m + g.m, f.n + g.n, out)


def identity(n: int) -> TlElement:
    return TlElement.from_matching(PlanarMatching.from_pairs(n, n, [(i, n + i) for i in range(n)]))


def cap() -> TlElement:
    """``2 -> 0``: joins the two bottom points."""
    return TlElement.from_matching(PlanarMatching(2, 0, ((0, 1),)))


def cup() -> TlElement:
    """``0 -> 2``: joins the two top points."""
    return TlElement.from_matching(PlanarMatching(0, 2, ((0, 1),)))


def generator(i: int, n: int) -> TlElement:
    """The cup-cap ``e_i`` on strands ``i, i+1`` (1-based) of ``TL_n``."""
    if not 1 <= i < n:
        raise ValueError(f"e_{i} does not exist in TL_{n}")
    return tensor(tensor(identity(i - 1), compose(cap(), cup())), identity(n - i - 1))


@lru_cache(maxsize=None)
def jones_wenzl(n: int) -> TlElement:
    """The Jones-Wenzl idempotent by Wenzl's recursion.

    ``P_{k+1} = P_k (x) 1 - (Delta_{k-1}/Delta_k) (P_k (x) 1) e_k (P_k (x) 1)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        return identity(n)
    prev = tensor(jones_wenzl(n - 1), identity(1))
    k = n - 1
    ratio = loop_chebyshev(k - 1) / loop_chebyshev(k)
    middle = compose(compose(prev, generator(k, n)), prev)
    return prev - middle.scale(ratio)


def closure(f: TlElement) -> RatFunc:
    """Markov trace: join top point ``j`` to bottom point ``j`` and count loops."""
    if f.m != f.n:
        raise BoundaryMismatch("closure needs a square element")
    total = ZERO
    for mat, c in f.terms.items():
        total = total + c * _delta_power(_closure_loops(mat))
    return total


def _closure_loops(mat: PlanarMatching) -> int:
    n = mat.n
    parent = list(range(mat.m + n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in mat.pairs:
        union(a, b)
    for j in range(n):
        union(j, mat.m + j)
    return len({find(x) for x in range(mat.m + n)})


def scalar(f: TlElement) -> RatFunc:
    """Value of a ``0 -> 0`` element."""
    if (f.m, f.n) != (0, 0):
        raise BoundaryMismatch("not a closed diagram")
    return f.coefficient(PlanarMatching(0, 0, ()))


def format_element(f: TlElement, var: str = "A") -> str:
    """One line per term: matching as a pairing list, then its coefficient."""
    if not f.terms:
        return "0"
    lines = []
    for mat in sorted(f.terms):
        lines.append(f"{mat}\t{f.terms[mat].format(var)}")
    return "\n".join(lines)
