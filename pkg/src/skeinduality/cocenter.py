"""Window-truncated cocenters of quantum tori smashed with a finite group.

This is an exploratory ORACLE. Nothing here feeds the duality verdicts.

Basis symbols are ``X^v w`` with ``v`` in ``Z^{2n}`` and ``w`` in a finite
group ``W`` of integer matrices preserving the skew form ``S``. The product is

    (X^u w)(X^v w') = A^{<u, w v>_S} X^{u + w v} (w w').

Every commutator of two basis symbols is a difference of two monomial terms
``A^e1 s1 - A^e2 s2``. The commutator span is therefore tracked with a
union-find whose edges carry powers of ``A``. A component dies once it closes
a cycle with nonzero total exponent, because ``1 - A^k`` is invertible in Q(A).
``cocenter_window_elimination`` is a plain sparse elimination over Q(A) that
cross-checks this on small windows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .exactalg import ZERO, A_pow, RatFunc

Matrix = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def _matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


class Symbol(NamedTuple):
    v: tuple[int, ...]
    w: int  # index into TwistedLatticeAlgebra.group


@dataclass
class TwistedLatticeAlgebra:
    """Quantum torus on ``Z^{2n}`` with skew form ``S``, smashed with ``W``."""

    form: Matrix
    generators: Sequence[Matrix] = ()
    max_group_order: int = 5000
    group: list[Matrix] = field(init=False)

    def __post_init__(self):
        self.form = tuple(tuple(int(x) for x in row) for row in self.form)
        d = len(self.form)
        if d % 2 or any(len(row) != d for row in self.form):
            raise AlgebraError("the form must be a square matrix of even size")
        if self.form != tuple(tuple(-x for x in row) for row in _transpose(self.form)):
            raise AlgebraError("the form is not skew-symmetric")
        gens = [tuple(tuple(int(x) for x in row) for row in g) for g in self.generators]
        for g in gens:
            if len(g) != d or any(len(row) != d for row in g):
                raise AlgebraError(f"group generator must be {d}x{d}")
            if _matmul(_matmul(_transpose(g), self.form), g) != self.form:
                raise AlgebraError(f"generator {g} does not preserve the form")
        ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        self.group = [ident]
        seen = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    p = _matmul(g, h)
                    if p not in seen:
                        seen[p] = len(self.group)
                        self.group.append(p)
                        nxt.append(p)
                        if len(self.group) > self.max_group_order:
                            raise AlgebraError("generated group is too large (or infinite)")
            frontier = nxt
        self._index = seen
        self._mul = [[seen[_matmul(a, b)] for b in self.group] for a in self.group]
        inv = [next(j for j in range(len(self.group)) if self._mul[i][j] == 0) for i in range(len(self.group))]
        self._class = [
            min(self._mul[self._mul[g][w]][inv[g]] for g in range(len(self.group))) for w in range(len(self.group))
        ]

    @property
    def rank(self) -> int:
        return len(self.form)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return sum(u[i] * self.form[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if self.form[i][j])

    def unit(self) -> Symbol:
        return Symbol((0,) * self.rank, 0)

    def multiply(self, x: Symbol, y: Symbol) -> tuple[int, Symbol]:
        """Returns ``(e, s)`` with ``x y = A^e s``."""
        wv = _matvec(self.group[x.w], y.v)
        e = self.pairing(x.v, wv)
        return e, Symbol(tuple(a + b for a, b in zip(x.v, wv)), self._mul[x.w][y.w])

    def conjugacy_class(self, w: int) -> int:
        """Smallest group index conjugate to ``w``."""
        return self._class[w]

    def window(self, radius: int) -> list[Symbol]:
        pts = product(range(-radius, radius + 1), repeat=self.rank)
        return [Symbol(v, w) for v in pts for w in range(len(self.group))]


@dataclass(frozen=True)
class WindowSpec:
    r: int
    R: int

    def __post_init__(self):
        if self.r < 0 or self.R < self.r:
            raise ValueError("need 0 <= r <= R")


def _norm(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


class _PowerUnionFind:
    """Union-find where ``s = A^pot[s] * parent[s]``; killed roots span nothing."""

    def __init__(self):
        self.parent: dict[Symbol, Symbol] = {}
        self.pot: dict[Symbol, int] = {}
        self.killed: set[Symbol] = set()

    def find(self, s: Symbol) -> tuple[Symbol, int]:
        if s not in self.parent:
            return s, 0
        path = []
        while s in self.parent:
            path.append(s)
            s = self.parent[s]
        root, acc = s, 0
        for node in reversed(path):
            acc += self.pot[node]
            self.parent[node] = root
            self.pot[node] = acc
        return root, self.pot[path[0]]

    def relate(self, s1: Symbol, e1: int, s2: Symbol, e2: int):
        """Impose ``A^e1 s1 = A^e2 s2``."""
        r1, p1 = self.find(s1)
        r2, p2 = self.find(s2)
        k = e2 - e1 + p2 - p1  # r1 = A^k r2
        if r1 == r2:
            if k:
                self.killed.add(r1)
            return
        self.parent[r1] = r2
        self.pot[r1] = k
        if r1 in self.killed:
            self.killed.discard(r1)
            self.killed.add(r2)


@dataclass
class CocenterEstimate:
    r: int
    radii: list[int]
    dims: list[int]
    blocks: list[dict[int, int]]  # per radius: conjugacy class representative -> dim
    window_size: int
    stabilized: bool
    final: int
    label: str = "ORACLE"
    notes: list[str] = field(default_factory=list)

    def to_tsv(self) -> str:
        lines = ["# ORACLE: exploratory cocenter window estimate", "r\tR\tdim\tblocks"]
        for R, d, b in zip(self.radii, self.dims, self.blocks):
            blocks = ",".join(f"{k}:{v}" for k, v in sorted(b.items()))
            lines.append(f"{self.r}\t{R}\t{d}\t{blocks}")
        lines.append(f"# window size {self.window_size}; stabilized {'yes' if self.stabilized else 'no'}; final {self.final}")
        lines += [f"# {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "r": self.r,
                "radii": self.radii,
                "dims": self.dims,
                "blocks": [{str(k): v for k, v in sorted(b.items())} for b in self.blocks],
                "window_size": self.window_size,
                "stabilized": self.stabilized,
                "final": self.final,
                "notes": self.notes,
            },
            indent=2,
            sort_keys=True,
        ) + "\n"


def _is_stabilized(dims: list[int], window_size: int) -> bool:
    # three equal values in a row; a plateau at the full window only means no relations reached it
    return len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3] and dims[-1] < window_size


def cocenter_window(alg: TwistedLatticeAlgebra, win: WindowSpec, cap: int = 20000) -> CocenterEstimate:
    """Cocenter dimension of the radius-``r`` window for generation radii ``r..R``."""
    big = alg.window(win.R)
    if len(big) > cap:
        raise CapExceeded(f"generation window has {len(big)} symbols, cap is {cap}")
    inner = [s for s in big if _norm(s.v) <= win.r]
    uf = _PowerUnionFind()
    radii, dims, blocks = [], [], []
    done: list[Symbol] = []
    by_radius: dict[int, list[Symbol]] = {}
    for s in big:
        by_radius.setdefault(_norm(s.v), []).append(s)
    for R in range(0, win.R + 1):
        fresh = by_radius.get(R, [])
        for i, x in enumerate(fresh):
            for y in done + fresh[:i]:
                e1, s1 = alg.multiply(x, y)
                e2, s2 = alg.multiply(y, x)
                uf.relate(s1, e1, s2, e2)
        done += fresh
        if R < win.r:
            continue
        alive: dict[Symbol, int] = {}
        for s in inner:
            root, _ = uf.find(s)
            if root not in uf.killed:
                alive[root] = alg.conjugacy_class(root.w)
        per_class: dict[int, int] = {}
        for c in alive.values():
            per_class[c] = per_class.get(c, 0) + 1
        radii.append(R)
        dims.append(len(alive))
        blocks.append(per_class)
    stable = _is_stabilized(dims, len(inner))
    return CocenterEstimate(win.r, radii, dims, blocks, len(inner), stable, dims[-1])


def cocenter_window_elimination(alg: TwistedLatticeAlgebra, win: WindowSpec) -> int:
    """Same quantity by sparse Gaussian elimination over Q(A), outside columns first."""
    gen = alg.window(win.R)
    inner = set(s for s in gen if _norm(s.v) <= win.r)

    def key(s: Symbol):
        return (s in inner, s.w, s.v)

    pivots: dict[Symbol, dict[Symbol, RatFunc]] = {}
    for i, x in enumerate(gen):
        for y in gen[i + 1 :]:
            e1, s1 = alg.multiply(x, y)
            e2, s2 = alg.multiply(y, x)
            row: dict[Symbol, RatFunc] = {}
            row[s1] = row.get(s1, ZERO) + A_pow(e1)
            row[s2] = row.get(s2, ZERO) - A_pow(e2)
            row = {k: v for k, v in row.items() if not v.is_zero()}
            while row:
                lead = min(row, key=key)
                prow = pivots.get(lead)
                if prow is None:
                    pivots[lead] = row
                    break
                f = row[lead] / prow[lead]
                for k, v in prow.items():
                    row[k] = row.get(k, ZERO) - f * v
                row = {k: v for k, v in row.items() if not v.is_zero()}
    inside = sum(1 for lead in pivots if lead in inner)
    return len(inner) - inside


# ------------------------------------------------------------------ presets


STANDARD_FORM: Matrix = ((0, 1), (-1, 0))
NEGATION: Matrix = ((-1, 0), (0, -1))
PJ3_TARGET_N2 = 9


def quantum_torus(rank: int = 2) -> TwistedLatticeAlgebra:
    n = rank // 2
    form = [[0] * rank for _ in range(rank)]
    for i in range(n):
        form[2 * i][2 * i + 1] = 1
        form[2 * i + 1][2 * i] = -1
    return TwistedLatticeAlgebra(tuple(map(tuple, form)))


def exploratory_z2_report(r: int = 2, R: int = 6, cap: int = 20000) -> CocenterEstimate:
    """Rank 2, ``W = Z/2`` acting by ``v -> -v``; compared against ``(P*J3)(2) = 9``."""
    alg = TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION])
    est = cocenter_window(alg, WindowSpec(r, R), cap)
    verdict = "matches" if est.stabilized and est.final == PJ3_TARGET_N2 else "does not match"
    est.notes.append(
        f"exploratory: stabilized={est.stabilized}, value {est.final} {verdict} the reference target "
        f"(P*J3)(2) = {PJ3_TARGET_N2}; not an acceptance gate"
    )
    return est


def load_form(text: str) -> Matrix:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("S", data.get("form"))
    return tuple(tuple(int(x) for x in row) for row in data)


def load_group(text: str) -> list[Matrix]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("generators", [])
    return [tuple(tuple(int(x) for x in row) for row in g) for g in data]
