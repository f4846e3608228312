"""PGL_2 webs evaluated inside the Temperley-Lieb category by JW_2 cabling.

A web is given in sliced form: a sequence of layers, each a left-to-right row
of pieces acting on V(2) edges. Every V(2) edge becomes two parallel strands
through a second Jones-Wenzl clasp, and a trivalent vertex becomes the planar
connector that joins neighbouring strands of adjacent edges (coefficient 1, no
theta normalization). The constants ``a, b, c`` reported below are relative to
that vertex normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .bracket import braid_tangle, resolve
from .exactalg import RatFunc, SingularSystemError, kernel_and_rank_over_ratfunc, solve
from .tlcat import PlanarMatching, TlElement, compose, identity, jones_wenzl, tensor


class WebError(ValueError):
    pass


@dataclass(frozen=True)
class WebPiece:
    kind: str  # "edge", "vertex", "cup" or "cap"
    n_in: int
    n_out: int

    def __post_init__(self):
        expected = {"edge": (1, 1), "cup": (0, 2), "cap": (2, 0)}
        if self.kind == "vertex":
            if self.n_in + self.n_out != 3:
                raise WebError(f"valence violation: vertex with {self.n_in}+{self.n_out} edges")
        elif self.kind in expected:
            if (self.n_in, self.n_out) != expected[self.kind]:
                raise WebError(f"{self.kind} must be {expected[self.kind]}")
        else:
            raise WebError(f"unknown piece {self.kind!r}")


EDGE = WebPiece("edge", 1, 1)
CUP = WebPiece("cup", 0, 2)
CAP = WebPiece("cap", 2, 0)
MERGE = WebPiece("vertex", 2, 1)
SPLIT = WebPiece("vertex", 1, 2)


@dataclass(frozen=True)
class WebDiagram:
    """A trivalent V(2)-web in the cylinder, sliced into layers."""

    inputs: int
    layers: tuple[tuple[WebPiece, ...], ...]

    def __post_init__(self):
        width = self.inputs
        for k, layer in enumerate(self.layers):
            n_in = sum(p.n_in for p in layer)
            if n_in != width:
                raise WebError(f"layer {k} consumes {n_in} edges but {width} arrive")
            width = sum(p.n_out for p in layer)

    @property
    def outputs(self) -> int:
        width = self.inputs
        for layer in self.layers:
            width = sum(p.n_out for p in layer)
        return width

    @property
    def vertex_count(self) -> int:
        return sum(p.kind == "vertex" for layer in self.layers for p in layer)


@dataclass(frozen=True)
class CabledElement:
    """A TL element on doubled strands between ``edges_in`` and ``edges_out`` V(2) edges."""

    edges_in: int
    edges_out: int
    element: TlElement


@lru_cache(maxsize=None)
def clasp(edges: int) -> TlElement:
    out = identity(0)
    for _ in range(edges):
        out = tensor(out, jones_wenzl(2))
    return out


def connector(n_in: int, n_out: int) -> PlanarMatching:
    """The unclasped vertex: adjacent edges joined strand to strand, no turnbacks."""
    m = 2 * n_in
    groups = [[2 * i, 2 * i + 1] for i in range(n_in)]
    groups += [[m + 2 * j + 1, m + 2 * j] for j in reversed(range(n_out))]
    pairs = [(groups[g][1], groups[(g + 1) % len(groups)][0]) for g in range(len(groups))]
    return PlanarMatching.from_pairs(m, 2 * n_out, pairs)


def _cable_piece(p: WebPiece) -> TlElement:
    if p.kind == "edge":
        return jones_wenzl(2)
    if p.kind == "cup":
        raw = TlElement.from_matching(PlanarMatching(0, 4, ((0, 3), (1, 2))))
    elif p.kind == "cap":
        raw = TlElement.from_matching(PlanarMatching(4, 0, ((0, 3), (1, 2))))
    else:
        raw = TlElement.from_matching(connector(p.n_in, p.n_out))
    return compose(compose(clasp(p.n_in), raw), clasp(p.n_out))


def cable(w: WebDiagram) -> CabledElement:
    out = clasp(w.inputs)
    for layer in w.layers:
        row = identity(0)
        for piece in layer:
            row = tensor(row, _cable_piece(piece))
        out = compose(out, row)
    return CabledElement(w.inputs, w.outputs, out)


def web_value(w: WebDiagram) -> RatFunc:
    """Scalar value of a closed web."""
    if w.inputs or w.outputs:
        raise WebError("only closed webs have a scalar value")
    return cable(w).element.coefficient(PlanarMatching(0, 0, ()))


# standard webs
def strand_web() -> WebDiagram:
    return WebDiagram(1, ((EDGE,),))


def circle_web() -> WebDiagram:
    return WebDiagram(0, ((CUP,), (CAP,)))


def theta_web() -> WebDiagram:
    return WebDiagram(0, ((WebPiece("vertex", 0, 3),), (WebPiece("vertex", 3, 0),)))


def identity_web() -> WebDiagram:
    return WebDiagram(2, ((EDGE, EDGE),))


def h_web() -> WebDiagram:
    """Two vertices joined by a vertical edge (merge, then split)."""
    return WebDiagram(2, ((MERGE,), (SPLIT,)))


def h_rotated_web() -> WebDiagram:
    """Two vertices joined by a horizontal edge between the two through-edges."""
    return WebDiagram(2, ((SPLIT, EDGE), (EDGE, MERGE)))


def cupcap_web() -> WebDiagram:
    return WebDiagram(2, ((CAP,), (CUP,)))


def end_space_v2v2() -> dict[str, CabledElement]:
    """Spanning set ``{identity, H, cup-cap}`` of End(V(2) (x) V(2))."""
    return {
        "identity": cable(identity_web()),
        "H": cable(h_web()),
        "cupcap": cable(cupcap_web()),
    }


def end_space_rank(elements: list[TlElement] | None = None) -> int:
    if elements is None:
        elements = [c.element for c in end_space_v2v2().values()]
    rank, _ = kernel_and_rank_over_ratfunc([e.coordinates() for e in elements])
    return rank


@lru_cache(maxsize=None)
def braiding_v2() -> TlElement:
    """The positive crossing of two clasped double strands (left pair over)."""
    raw = resolve(braid_tangle([2, 1, 3, 2], 4))
    return compose(compose(clasp(2), raw), clasp(2))


def express_in_basis(x: TlElement, order: tuple[str, ...] = ("identity", "H", "cupcap")) -> dict[str, RatFunc]:
    """Coordinates of a 4 -> 4 element in the clasped basis, residual checked."""
    basis = end_space_v2v2()
    cols = [basis[k].element.coordinates() for k in order]
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    try:
        coeffs = solve(rows, x.coordinates())
    except SingularSystemError as exc:
        raise WebError(f"cannot expand in the clasped basis: {exc}") from None
    residual = x
    for k, c in zip(order, coeffs):
        residual = residual - basis[k].element.scale(c)
    if not residual.is_zero():
        raise WebError("element is not in the span of the clasped basis")
    return dict(zip(order, coeffs))


@dataclass(frozen=True)
class WebConstants:
    a: RatFunc
    b: RatFunc
    c: RatFunc
    h_rotated: dict[str, RatFunc]
    vertex_normalization: str = "unit connector, no theta normalization"


def solve_abc(order: tuple[str, ...] = ("identity", "H", "cupcap")) -> WebConstants:
    """Expand the V(2) braiding as ``a id + b H + c cupcap``."""
    coeffs = express_in_basis(braiding_v2(), order)
    rotated = express_in_basis(cable(h_rotated_web()).element)
    return WebConstants(coeffs["identity"], coeffs["H"], coeffs["cupcap"], rotated)


# ---------------------------------------------------------------- q = 1 oracle
#
# At A = 1 the TL category with loop value -2 is realized on V = Q^2 by the
# skew form: a cap is eps_{ij}, a cup is (eps^-1)^{kl}. Matchings are evaluated
# entrywise, independently of TL composition.

_EPS = ((0, 1), (-1, 0))
_EPS_INV = ((0, -1), (1, 0))


def classical_matrix(mat: PlanarMatching) -> list[list[Fraction]]:
    """``2^n x 2^m`` matrix of ``mat`` acting on ``V^{(x)m}``."""
    m, n = mat.m, mat.n
    rows = []
    for j in product(range(2), repeat=n):
        row = []
        for i in product(range(2), repeat=m):
            v = 1
            for a, b in mat.pairs:
                if b < m:
                    v *= _EPS[i[a]][i[b]]
                elif a >= m:
                    v *= _EPS_INV[j[a - m]][j[b - m]]
                else:
                    v *= int(i[a] == j[b - m])
                if not v:
                    break
            row.append(Fraction(v))
        rows.append(row)
    return rows


def classical_element(x: TlElement) -> list[list[Fraction]]:
    """Specialize coefficients to ``A = 1`` and sum the classical matrices."""
    size_out, size_in = 2**x.n, 2**x.m
    out = [[Fraction(0)] * size_in for _ in range(size_out)]
    for mat, c in x.terms.items():
        cv = c.evaluate(1)
        mm = classical_matrix(mat)
        for r in range(size_out):
            for s in range(size_in):
                if mm[r][s]:
                    out[r][s] += cv * mm[r][s]
    return out


def _sym2_embedding() -> list[list[Fraction]]:
    # columns: basis s_a (x) s_b of Sym^2 (x) Sym^2 inside V^{(x)4}
    sym = [
        {(0, 0): 1},
        {(0, 1): 1, (1, 0): 1},
        {(1, 1): 1},
    ]
    cols = []
    for sa in sym:
        for sb in sym:
            v = [Fraction(0)] * 16
            for (i0, i1), x in sa.items():
                for (i2, i3), y in sb.items():
                    v[i0 * 8 + i1 * 4 + i2 * 2 + i3] += x * y
            cols.append(v)
    return [[cols[c][r] for c in range(9)] for r in range(16)]


def _solve_fractions(m: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(m[0])
    aug = [row[:] + [bi] for row, bi in zip(m, b)]
    piv_cols = []
    r = 0
    for c in range(n + 1):
        p = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if p is None:
            continue
        if c == n:
            raise WebError("classical system is inconsistent")
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) != n:
        raise WebError("classical system is underdetermined")
    return [aug[k][n] for k in range(n)]


def restrict_to_v2v2(mat16: list[list[Fraction]]) -> list[list[Fraction]]:
    """The 9x9 matrix of a map preserving Sym^2 (x) Sym^2."""
    emb = _sym2_embedding()
    out_cols = []
    for c in range(9):
        image = [sum(mat16[r][k] * emb[k][c] for k in range(16)) for r in range(16)]
        out_cols.append(_solve_fractions(emb, image))
    return [[out_cols[c][r] for c in range(9)] for r in range(9)]


def classical_flip_expansion() -> tuple[Fraction, Fraction, Fraction]:
    """Brute-force coefficients of the flip of V(2) (x) V(2) at q = 1."""
    basis = end_space_v2v2()
    mats = [restrict_to_v2v2(classical_element(basis[k].element)) for k in ("identity", "H", "cupcap")]
    flip = [[Fraction(int(r == (c % 3) * 3 + c // 3)) for c in range(9)] for r in range(9)]
    rows = [[m[r][c] for m in mats] for r in range(9) for c in range(9)]
    rhs = [flip[r][c] for r in range(9) for c in range(9)]
    a, b, c = _solve_fractions(rows, rhs)
    return a, b, c


def is_clasped(x: CabledElement) -> bool:
    e = x.element
    return compose(compose(clasp(x.edges_in), e), clasp(x.edges_out)) == e

