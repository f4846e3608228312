import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinduality.exactalg import IntMatrix, snf
from skeinduality.homology import (
    ChainComplex,
    ChainComplexError,
    CycleError,
    CycleOne,
    HomologyGroup,
    UnsupportedManifold,
    dump_chain_complex,
    homologous,
    homology,
    homology_class,
    homology_direct,
    homology_uct,
    intersection_pairing,
    load_chain_complex,
    pairing_is_perfect,
    pairing_matrix,
    picard,
    registry,
)

REGISTRY = [("torus3", {}), ("sigma_g_x_s1", {"g": 1}), ("sigma_g_x_s1", {"g": 2}), ("sphere2_x_s1", {})]


def lens_space(p: int) -> ChainComplex:
    """One cell per dimension, the 2-cell wrapping p times."""
    z = IntMatrix.from_rows([[0]])
    return ChainComplex(f"L({p},1)", (1, 1, 1, 1), z, IntMatrix.from_rows([[p]]), z)


def test_closed_forms_integral():
    t3 = registry("torus3").complex
    assert [homology(t3, k) for k in range(4)] == [HomologyGroup(1), HomologyGroup(3), HomologyGroup(3), HomologyGroup(1)]
    for g in range(1, 4):
        c = registry("sigma_g_x_s1", g=g).complex
        assert [homology(c, k).rank for k in range(4)] == [1, 2 * g + 1, 2 * g + 1, 1]
        assert all(homology(c, k).torsion == () for k in range(4))
    s = registry("sphere2_x_s1").complex
    assert [homology(s, k).rank for k in range(4)] == [1, 1, 1, 1]


def test_sigma1_matches_torus():
    a = registry("sigma_g_x_s1", g=1).complex
    b = registry("torus3").complex
    for k in range(4):
        for n in (0, 2, 3):
            assert homology(a, k, n) == homology(b, k, n)


def test_sigma2_mod2_order():
    c = registry("sigma_g_x_s1", g=2).complex
    assert homology(c, 1, 2).order == 2**5


def test_lens_space_torsion():
    c = lens_space(6)
    assert homology(c, 1) == HomologyGroup(0, (6,))
    assert homology(c, 2) == HomologyGroup(0)
    assert homology(c, 3) == HomologyGroup(1)
    # Z/4 coefficients see Z/gcd(6,4) in degrees 1 and 2
    assert homology(c, 1, 4) == HomologyGroup(0, (2,))
    assert homology(c, 2, 4) == HomologyGroup(0, (2,))
    assert homology(c, 3, 4) == HomologyGroup(0, (4,))
    assert homology(c, 1, 5) == HomologyGroup(0)


def test_boundary_condition_enforced():
    d1 = IntMatrix.from_rows([[1]])
    d2 = IntMatrix.from_rows([[1]])
    z = IntMatrix.from_rows([[0]])
    with pytest.raises(ChainComplexError, match="d1·d2"):
        ChainComplex("bad", (1, 1, 1, 1), d1, d2, z)
    with pytest.raises(ChainComplexError, match="d2·d3"):
        ChainComplex("bad", (1, 1, 1, 1), z, d2, IntMatrix.from_rows([[1]]))
    with pytest.raises(ChainComplexError, match="shape"):
        ChainComplex("bad", (1, 2, 1, 1), z, d2, z)


def _kernel_basis(m: IntMatrix) -> list[list[int]]:
    dec = snf(m)
    r = dec.right_transform.tolist()
    return [[r[i][j] for i in range(m.cols)] for j in range(dec.rank, m.cols)]


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=2)


@settings(max_examples=40, deadline=None)
@given(small, st.lists(st.integers(-3, 3), min_size=9, max_size=9), st.integers(2, 12))
def test_uct_and_direct_routes_agree(d1_rows, mix, modulus):
    d1 = IntMatrix.from_rows(d1_rows)
    kernel = _kernel_basis(d1)
    if kernel:
        # 2-boundaries: random integer combinations of kernel vectors, so d1 d2 = 0
        cols = [[sum(mix[(j * 3 + t) % 9] * kernel[t % len(kernel)][i] for t in range(3)) for j in range(3)] for i in range(3)]
    else:
        cols = [[0] * 3 for _ in range(3)]
    d2 = IntMatrix.from_rows(cols, 3)
    c = ChainComplex("random", (2, 3, 3, 0), d1, d2, IntMatrix.zeros(3, 0))
    for k in range(4):
        assert homology_uct(c, k, modulus) == homology_direct(c, k, modulus)
    # Euler characteristic of the cell counts
    assert sum((-1) ** k * homology(c, k).rank for k in range(4)) == 2 - 3 + 3


@pytest.mark.parametrize("name,params", REGISTRY)
def test_poincare_duality_cardinality(name, params):
    c = registry(name, **params).complex
    for n in range(2, 13):
        assert homology(c, 1, n).order == homology(c, 2, n).order
        assert homology(c, 0, n).order == homology(c, 3, n).order == n


@pytest.mark.parametrize("g", range(1, 6))
def test_sigma_mod2_orders(g):
    c = registry("sigma_g_x_s1", g=g).complex
    assert homology(c, 1, 2).order == 2 ** (2 * g + 1)


def test_picard_examples():
    info = picard(registry("torus3"), 2)
    assert info.pi0.order == info.pi1.order == 8 and info.dual_check
    info = picard(registry("sigma_g_x_s1", g=2), 2)
    assert info.pi0.order == info.pi1.order == 32
    assert picard(registry("sphere2_x_s1"), 3).pi0.order == 3
    with pytest.raises(ValueError):
        picard(registry("torus3"), 1)


@pytest.mark.parametrize("name,params", REGISTRY)
def test_labeled_bases_are_bases(name, params):
    m = registry(name, **params)
    c = m.complex
    assert len(m.h1_basis) == homology(c, 1).rank
    assert len(m.h2_basis) == homology(c, 2).rank
    for deg, basis in ((1, m.h1_basis), (2, m.h2_basis)):
        d = c.boundary(deg)
        for i, b in enumerate(basis):
            assert not any(d.apply(b.chain))
            coords = homology_class(m, b.chain, 7, degree=deg)
            assert coords == tuple(int(i == j) for j in range(len(basis)))


def test_kunneth_tags():
    m = registry("sigma_g_x_s1", g=2)
    assert [c.tag for c in m.h1_basis] == ["S1", "surface_1", "surface_2", "surface_3", "surface_4"]
    assert registry("torus3").h1_labels == ("x", "y", "z")


def test_registry_errors():
    with pytest.raises(UnsupportedManifold):
        registry("klein_bottle")
    with pytest.raises(ValueError):
        registry("sigma_g_x_s1", g=0)


def test_homologous_examples():
    m = registry("torus3")
    c = m.complex
    n1 = c.cells[1]
    x, y = (CycleOne(2, b.chain) for b in m.h1_basis[:2])
    assert homologous(m, x, x) is not None
    assert not any(homologous(m, x, x))
    assert homologous(m, x, y) is None
    # boundary of a single 2-cell is homologous to the empty cycle
    col = [c.d2[i, 0] for i in range(n1)]
    empty = CycleOne(3, (0,) * n1)
    witness = homologous(m, empty, CycleOne(3, col))
    assert witness is not None
    assert all((u - v) % 3 == 0 for u, v in zip(c.d2.apply(witness), col))
    with pytest.raises(ValueError):
        homologous(m, x, CycleOne(3, x.chain))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=24, max_size=24))
def test_homologous_iff_same_class(a, b, eta):
    m = registry("torus3")
    c = m.complex
    N = 3

    def combo(coefs, extra):
        v = [0] * c.cells[1]
        for k, basis in zip(coefs, m.h1_basis):
            v = [p + k * q for p, q in zip(v, basis.chain)]
        bd = c.d2.apply(extra)
        return CycleOne(N, tuple(p + q for p, q in zip(v, bd)))

    g1 = combo(a, [0] * 24)
    g2 = combo(b, eta)
    same = homology_class(m, g1.chain, N) == homology_class(m, g2.chain, N)
    assert (homologous(m, g1, g2) is not None) == same
    assert same == (tuple(x % N for x in a) == tuple(x % N for x in b))


def test_cycle_check_names_vertex():
    m = registry("torus3")
    chain = [0] * m.complex.cells[1]
    chain[0] = 1
    with pytest.raises(CycleError, match="0-cell"):
        homologous(m, CycleOne(2, tuple(chain)), CycleOne(2, tuple(chain)))


def test_intersection_pairing():
    m = registry("torus3")
    assert pairing_matrix(m) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert intersection_pairing(m, (1, 0, 0), (1, 0, 0), 5) == 1
    assert intersection_pairing(m, (1, 2, 3), (0, 0, 0), 5) == 0
    assert pairing_is_perfect(m, 5)
    for name, params in REGISTRY:
        mm = registry(name, **params)
        for p in (2, 3, 5, 7):
            assert pairing_is_perfect(mm, p)
    s = registry("sigma_g_x_s1", g=1)
    labels1, labels2 = s.h1_labels, s.h2_labels
    p = pairing_matrix(s)
    assert p[labels2.index("Sigma")][labels1.index("t")] == 1
    assert p[labels2.index("a1xS1")][labels1.index("b1")] == 1
    assert p[labels2.index("b1xS1")][labels1.index("a1")] == -1
    with pytest.raises(UnsupportedManifold):
        pairing_matrix(lens_space(2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=5, max_size=5), st.lists(st.integers(0, 4), min_size=5, max_size=5),
       st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_pairing_bilinear(s1, s2, g):
    m = registry("sigma_g_x_s1", g=2)
    N = 5
    lhs = intersection_pairing(m, [a + b for a, b in zip(s1, s2)], g, N)
    assert lhs == (intersection_pairing(m, s1, g, N) + intersection_pairing(m, s2, g, N)) % N


def test_json_round_trip_and_errors():
    c = registry("sphere2_x_s1").complex
    again = load_chain_complex(dump_chain_complex(c))
    assert [homology(again, k) for k in range(4)] == [homology(c, k) for k in range(4)]
    bad = {"name": "x", "cells": [1, 1, 1, 1], "d1": [[1]], "d2": [[1]], "d3": [[0]]}
    with pytest.raises(ChainComplexError, match="d1·d2"):
        load_chain_complex(json.dumps(bad))
    with pytest.raises(ChainComplexError, match="missing"):
        load_chain_complex(json.dumps({"name": "x"}))
    with pytest.raises(ChainComplexError, match="d2 must be"):
        load_chain_complex(json.dumps({"name": "x", "cells": [1, 1, 1, 1], "d1": [[0]], "d2": [[1, 2]], "d3": [[0]]}))
    # picard works on user complexes, pairing does not
    user = load_chain_complex(dump_chain_complex(lens_space(4)))
    assert picard(user, 2).pi0.order == 2
