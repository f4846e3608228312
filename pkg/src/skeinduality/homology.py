"""Cellular homology with integer and Z/N coefficients.

Registry manifolds are built as explicit product CW complexes and their
homology goes through Smith normal form end to end. Intersection pairings are
stored on the labeled H_1 / H_2 bases derived from the product structure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactalg import IntMatrix, det, inverse_unimodular, snf, solve_mod


class ChainComplexError(ValueError):
    pass


class UnsupportedManifold(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    """Cellular chain complex in degrees 0..3; ``d_k`` maps k-chains to (k-1)-chains."""

    name: str
    cells: tuple[int, int, int, int]
    d1: IntMatrix
    d2: IntMatrix
    d3: IntMatrix
    cell_names: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        n = self.cells
        for k, d in ((1, self.d1), (2, self.d2), (3, self.d3)):
            if (d.rows, d.cols) != (n[k - 1], n[k]):
                raise ChainComplexError(
                    f"d{k} has shape {d.rows}x{d.cols}, expected {n[k - 1]}x{n[k]}"
                )
        if not (self.d1 @ self.d2).is_zero():
            raise ChainComplexError("d1·d2 != 0: boundary of a boundary must vanish")
        if not (self.d2 @ self.d3).is_zero():
            raise ChainComplexError("d2·d3 != 0: boundary of a boundary must vanish")

    def boundary(self, k: int) -> IntMatrix:
        n = self.cells
        if k == 0:
            return IntMatrix.zeros(0, n[0])
        if k == 4:
            return IntMatrix.zeros(n[3], 0)
        return (self.d1, self.d2, self.d3)[k - 1]


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank`` plus cyclic torsion in divisibility order."""

    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        return math.prod(self.torsion)

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _canonical_torsion(orders: Sequence[int]) -> tuple[int, ...]:
    orders = [o for o in orders if o > 1]
    if not orders:
        return ()
    diag = IntMatrix.from_rows([[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)])
    return tuple(f for f in snf(diag).invariant_factors if f > 1)


def integral_homology(c: ChainComplex, k: int) -> HomologyGroup:
    dk = snf(c.boundary(k))
    dk1 = snf(c.boundary(k + 1))
    rank = c.cells[k] - dk.rank - dk1.rank
    return HomologyGroup(rank, tuple(f for f in dk1.invariant_factors if f > 1))


def homology_uct(c: ChainComplex, k: int, modulus: int) -> HomologyGroup:
    """H_k(C; Z/N) assembled from integral homology by universal coefficients."""
    hk = integral_homology(c, k)
    orders = [modulus] * hk.rank + [math.gcd(t, modulus) for t in hk.torsion]
    if k > 0:
        orders += [math.gcd(t, modulus) for t in integral_homology(c, k - 1).torsion]
    return HomologyGroup(0, _canonical_torsion(orders))


def homology_direct(c: ChainComplex, k: int, modulus: int) -> HomologyGroup:
    """H_k of the reduced complex C (x) Z/N, computed as a quotient of lattices.

    Cycles mod N form the lattice ``K = {x : d_k x = 0 mod N}``; the quotient
    ``K / (im d_{k+1} + N Z^n)`` is read off from one more Smith form.
    """
    n = c.cells[k]
    if n == 0:
        return HomologyGroup(0, ())
    dec = snf(c.boundary(k))
    scales = [1] * n
    for i, f in enumerate(dec.invariant_factors):
        scales[i] = modulus // math.gcd(modulus, f)
    r_inv = inverse_unimodular(dec.right_transform)
    gens = c.boundary(k + 1).hstack(
        IntMatrix.from_rows([[modulus * int(i == j) for j in range(n)] for i in range(n)], n)
    )
    y = (r_inv @ gens).tolist()
    for i, s in enumerate(scales):
        if any(v % s for v in y[i]):
            raise ChainComplexError("boundaries mod N are not cycles mod N")
        y[i] = [v // s for v in y[i]]
    rel = snf(IntMatrix.from_rows(y, gens.cols))
    if rel.rank != n:
        raise ChainComplexError("reduced homology is not finite")
    return HomologyGroup(0, tuple(f for f in rel.invariant_factors if f > 1))


def homology(c: ChainComplex, k: int, modulus: int = 0) -> HomologyGroup:
    """H_k with Z (modulus 0) or Z/N coefficients; the Z/N route is cross-checked."""
    if not 0 <= k <= 3:
        raise ValueError("degree must be in 0..3")
    if modulus == 0:
        return integral_homology(c, k)
    if modulus < 2:
        raise ValueError("modulus must be 0 or at least 2")
    a = homology_uct(c, k, modulus)
    b = homology_direct(c, k, modulus)
    if a != b:
        raise ChainComplexError(f"Z/{modulus} homology disagrees between routes: {a} vs {b}")
    return a


# ------------------------------------------------------------------ CW products


@dataclass
class _Cellular:
    cells: list[list[tuple]]  # cells[k] = names of k-cells
    bd: dict[int, dict[tuple, dict[tuple, int]]]  # bd[k][cell] = {face: coeff}

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def dim_of(self, cell) -> int:
        for k, cs in enumerate(self.cells):
            if cell in cs:
                return k
        raise KeyError(cell)


def _circle(segments: int, tag: str) -> _Cellular:
    vs = [(f"{tag}v{i}",) for i in range(segments)]
    es = [(f"{tag}e{i}",) for i in range(segments)]
    bd = {1: {}}
    for i, e in enumerate(es):
        face: dict[tuple, int] = {}
        j = (i + 1) % segments
        face[vs[j]] = face.get(vs[j], 0) + 1
        face[vs[i]] = face.get(vs[i], 0) - 1
        bd[1][e] = {k: v for k, v in face.items() if v}
    return _Cellular([vs, es], bd)


def _surface(genus: int) -> _Cellular:
    # one vertex, 2g edges, one face attached along prod [a_i, b_i]
    edges = []
    for i in range(1, genus + 1):
        edges += [(f"a{i}",), (f"b{i}",)]
    return _Cellular([[("p",)], edges, [("F",)]], {1: {e: {} for e in edges}, 2: {("F",): {}}})


def _sphere2() -> _Cellular:
    return _Cellular([[("p",)], [], [("S",)]], {1: {}, 2: {("S",): {}}})


def _product(x: _Cellular, y: _Cellular) -> _Cellular:
    dim = x.dim + y.dim
    cells: list[list[tuple]] = [[] for _ in range(dim + 1)]
    for i, cx in enumerate(x.cells):
        for j, cy in enumerate(y.cells):
            for a in cx:
                for b in cy:
                    cells[i + j].append(a + b)
    bd: dict[int, dict[tuple, dict[tuple, int]]] = {k: {} for k in range(1, dim + 1)}
    for i, cx in enumerate(x.cells):
        for j, cy in enumerate(y.cells):
            if i + j == 0:
                continue
            for a in cx:
                for b in cy:
                    out: dict[tuple, int] = {}
                    if i > 0:
                        for fa, c in x.bd[i][a].items():
                            out[fa + b] = out.get(fa + b, 0) + c
                    if j > 0:
                        sign = -1 if i % 2 else 1
                        for fb, c in y.bd[j][b].items():
                            out[a + fb] = out.get(a + fb, 0) + sign * c
                    bd[i + j][a + b] = {k: v for k, v in out.items() if v}
    return _Cellular(cells, bd)


def _chain_product(cx: Mapping[tuple, int], cy: Mapping[tuple, int]) -> dict[tuple, int]:
    return {a + b: u * v for a, u in cx.items() for b, v in cy.items()}


def _to_complex(name: str, x: _Cellular) -> ChainComplex:
    cells = x.cells + [[] for _ in range(4 - len(x.cells))]
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    mats = []
    for k in (1, 2, 3):
        rows = [[0] * len(cells[k]) for _ in cells[k - 1]]
        for c, faces in x.bd.get(k, {}).items():
            for f, v in faces.items():
                rows[index[k - 1][f]][index[k][c]] += v
        mats.append(IntMatrix.from_rows(rows, len(cells[k])))
    names = tuple(tuple("x".join(c) for c in cs) for cs in cells)
    return ChainComplex(name, tuple(len(cs) for cs in cells), *mats, cell_names=names)


# ------------------------------------------------------------------ registry


@dataclass(frozen=True)
class LabeledCycle:
    label: str
    tag: str  # Kunneth factor the class comes from
    chain: tuple[int, ...]


@dataclass(frozen=True)
class Manifold:
    name: str
    params: tuple[tuple[str, int], ...]
    complex: ChainComplex
    h1_basis: tuple[LabeledCycle, ...]
    h2_basis: tuple[LabeledCycle, ...]
    pairing: tuple[tuple[int, ...], ...]  # rows: H_2 basis, cols: H_1 basis
    oriented: bool = True

    @property
    def h1_labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.h1_basis)

    @property
    def h2_labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.h2_basis)


def _vector(cx: _Cellular, k: int, chain: Mapping[tuple, int]) -> tuple[int, ...]:
    index = {c: i for i, c in enumerate(cx.cells[k])}
    v = [0] * len(cx.cells[k])
    for c, coeff in chain.items():
        v[index[c]] += coeff
    return tuple(v)


def _fundamental_circle(tag: str, segments: int) -> dict[tuple, int]:
    return {(f"{tag}e{i}",): 1 for i in range(segments)}


def _torus3() -> Manifold:
    s = 2
    circles = [_circle(s, t) for t in ("x", "y", "z")]
    cx = _product(_product(circles[0], circles[1]), circles[2])
    point = [{(f"{t}v0",): 1} for t in ("x", "y", "z")]
    loop = [_fundamental_circle(t, s) for t in ("x", "y", "z")]

    def chain(parts):
        out = parts[0]
        for p in parts[1:]:
            out = _chain_product(out, p)
        return out

    h1 = []
    h2 = []
    for i, lab in enumerate("xyz"):
        h1.append(LabeledCycle(lab, f"S1_{i + 1}", _vector(cx, 1, chain([loop[j] if j == i else point[j] for j in range(3)]))))
    for i, lab in enumerate("xyz"):
        # the 2-torus transverse to the i-th circle
        h2.append(LabeledCycle(f"T_{lab}", f"S1^2 without S1_{i + 1}", _vector(cx, 2, chain([point[j] if j == i else loop[j] for j in range(3)]))))
    pairing = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    return Manifold("torus3", (), _to_complex("T^3", cx), tuple(h1), tuple(h2), pairing)


def _sigma_g_x_s1(g: int) -> Manifold:
    if g < 1:
        raise ValueError("genus must be at least 1")
    s = 2
    surf = _surface(g)
    circ = _circle(s, "t")
    cx = _product(surf, circ)
    base = {("tv0",): 1}
    loop = _fundamental_circle("t", s)
    pt = {("p",): 1}
    h1 = [LabeledCycle("t", "S1", _vector(cx, 1, _chain_product(pt, loop)))]
    h2 = [LabeledCycle("Sigma", "H2(Sigma)(x)H0(S1)", _vector(cx, 2, _chain_product({("F",): 1}, base)))]
    for i in range(1, g + 1):
        for k, e in enumerate(("a", "b")):
            tag = f"surface_{2 * i - 1 + k}"
            h1.append(LabeledCycle(f"{e}{i}", tag, _vector(cx, 1, _chain_product({(f"{e}{i}",): 1}, base))))
    for i in range(1, g + 1):
        for e in ("a", "b"):
            h2.append(LabeledCycle(f"{e}{i}xS1", "H1(Sigma)(x)H1(S1)", _vector(cx, 2, _chain_product({(f"{e}{i}",): 1}, loop))))
    labels1 = [c.label for c in h1]
    rows = []
    for c in h2:
        row = [0] * len(h1)
        if c.label == "Sigma":
            row[labels1.index("t")] = 1
        else:
            e, i = c.label[0], c.label[1:-3]
            # a_i x S1 meets b_i once, b_i x S1 meets a_i with the opposite sign
            if e == "a":
                row[labels1.index(f"b{i}")] = 1
            else:
                row[labels1.index(f"a{i}")] = -1
        rows.append(tuple(row))
    return Manifold(
        "sigma_g_x_s1", (("g", g),), _to_complex(f"Sigma_{g} x S^1", cx), tuple(h1), tuple(h2), tuple(rows)
    )


def _sphere2_x_s1() -> Manifold:
    s = 2
    cx = _product(_sphere2(), _circle(s, "t"))
    h1 = (LabeledCycle("t", "S1", _vector(cx, 1, _chain_product({("p",): 1}, _fundamental_circle("t", s)))),)
    h2 = (LabeledCycle("S2", "H2(S2)(x)H0(S1)", _vector(cx, 2, _chain_product({("S",): 1}, {("tv0",): 1}))),)
    return Manifold("sphere2_x_s1", (), _to_complex("S^2 x S^1", cx), h1, h2, ((1,),))


REGISTRY_NAMES = ("torus3", "sigma_g_x_s1", "sphere2_x_s1")


def registry(name: str, **params) -> Manifold:
    """Closed oriented registry manifold by name."""
    if name == "torus3":
        return _torus3()
    if name == "sigma_g_x_s1":
        return _sigma_g_x_s1(int(params.get("g", 1)))
    if name == "sphere2_x_s1":
        return _sphere2_x_s1()
    raise UnsupportedManifold(f"unknown manifold {name!r}; known: {', '.join(REGISTRY_NAMES)}")


# ------------------------------------------------------------------ cycles & Picard


@dataclass(frozen=True)
class CycleOne:
    """A Z/N-valued 1-chain given densely over the 1-cells."""

    modulus: int
    chain: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "chain", tuple(x % self.modulus for x in self.chain))


class CycleError(ValueError):
    pass


def _complex_of(m: Manifold | ChainComplex) -> ChainComplex:
    return m.complex if isinstance(m, Manifold) else m


def check_cycle(m: Manifold | ChainComplex, gamma: CycleOne) -> None:
    """Raise CycleError naming the first unbalanced 0-cell."""
    c = _complex_of(m)
    if len(gamma.chain) != c.cells[1]:
        raise CycleError(f"chain has {len(gamma.chain)} entries, complex has {c.cells[1]} 1-cells")
    bd = c.d1.apply(gamma.chain)
    for v, x in enumerate(bd):
        if x % gamma.modulus:
            name = c.cell_names[0][v] if c.cell_names else str(v)
            raise CycleError(f"not a cycle: incoming and outgoing weights differ at 0-cell {name}")


def homology_class(m: Manifold, chain: Sequence[int], modulus: int, degree: int = 1) -> tuple[int, ...]:
    """Coordinates of a Z/N cycle in the manifold's labeled basis."""
    basis = m.h1_basis if degree == 1 else m.h2_basis
    c = m.complex
    n = c.cells[degree]
    cols = [b.chain for b in basis]
    bmat = IntMatrix.from_rows([[col[i] for col in cols] for i in range(n)], len(cols))
    system = bmat.hstack(c.boundary(degree + 1))
    sol = solve_mod(system, list(chain), modulus)
    if sol is None:
        raise CycleError("chain is not a cycle modulo N")
    return sol[: len(cols)]


def homologous(m: Manifold | ChainComplex, gamma: CycleOne, gamma2: CycleOne) -> tuple[int, ...] | None:
    """A 2-chain ``eta`` with ``d eta = gamma2 - gamma`` over Z/N, or None."""
    if gamma.modulus != gamma2.modulus:
        raise ValueError(f"modulus mismatch: {gamma.modulus} vs {gamma2.modulus}")
    check_cycle(m, gamma)
    check_cycle(m, gamma2)
    c = _complex_of(m)
    diff = [b - a for a, b in zip(gamma.chain, gamma2.chain)]
    return solve_mod(c.d2, diff, gamma.modulus)


@dataclass(frozen=True)
class PicardInfo:
    """Isomorphism classes and automorphisms of the groupoid of 1-cycles."""

    pi0: HomologyGroup
    pi1: HomologyGroup
    dual_check: bool  # |H_2(M, A)| == |H_1(M, A^dual)|


def picard(m: Manifold | ChainComplex, modulus: int) -> PicardInfo:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    c = _complex_of(m)
    pi0 = homology(c, 1, modulus)
    pi1 = homology(c, 2, modulus)
    # the Pontryagin dual of Z/N is again Z/N
    dual = homology(c, 1, modulus)
    return PicardInfo(pi0, pi1, pi1.order == dual.order)


# ------------------------------------------------------------------ pairing


def pairing_matrix(m: Manifold) -> tuple[tuple[int, ...], ...]:
    if not isinstance(m, Manifold) or not m.pairing:
        raise UnsupportedManifold("intersection pairing is only stored for registry manifolds")
    return m.pairing


def intersection_pairing(m: Manifold, sigma: Sequence[int], gamma: Sequence[int], modulus: int) -> int:
    """``<sigma, gamma>`` mod N for coordinate vectors in the labeled H_2 / H_1 bases."""
    p = pairing_matrix(m)
    if len(sigma) != len(p) or len(gamma) != len(p[0]):
        raise ValueError("coordinate vectors do not match the labeled bases")
    return sum(s * p[i][j] * g for i, s in enumerate(sigma) for j, g in enumerate(gamma)) % modulus


def pairing_is_perfect(m: Manifold, modulus: int) -> bool:
    p = pairing_matrix(m)
    if len(p) != len(p[0]):
        return False
    return math.gcd(det(IntMatrix.from_rows(p)), modulus) == 1


# ------------------------------------------------------------------ JSON


def load_chain_complex(text: str) -> ChainComplex:
    """Parse ``{"name", "cells": [n0..n3], "d1", "d2", "d3"}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainComplexError(f"invalid JSON: {exc}") from None
    for key in ("name", "cells", "d1", "d2", "d3"):
        if key not in data:
            raise ChainComplexError(f"missing field {key!r}")
    cells = data["cells"]
    if not (isinstance(cells, list) and len(cells) == 4 and all(isinstance(x, int) and x >= 0 for x in cells)):
        raise ChainComplexError("'cells' must be four non-negative integers")
    mats = []
    for k in (1, 2, 3):
        rows = data[f"d{k}"]
        r, c = cells[k - 1], cells[k]
        if rows == [] and (r == 0 or c == 0):
            rows = [[] for _ in range(r)] if c == 0 else []
        if len(rows) != r or any(len(row) != c for row in rows):
            raise ChainComplexError(f"d{k} must be a {r}x{c} integer matrix")
        if any(not isinstance(x, int) for row in rows for x in row):
            raise ChainComplexError(f"d{k} has non-integer entries")
        mats.append(IntMatrix.from_rows(rows, c))
    return ChainComplex(str(data["name"]), tuple(cells), *mats)


def dump_chain_complex(c: ChainComplex) -> str:
    return json.dumps(
        {"name": c.name, "cells": list(c.cells), "d1": c.d1.tolist(), "d2": c.d2.tolist(), "d3": c.d3.tolist()}
    )
