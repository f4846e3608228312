import json
import random

import pytest

from skeinduality.cocenter import (
    NEGATION,
    STANDARD_FORM,
    AlgebraError,
    CapExceeded,
    Symbol,
    TwistedLatticeAlgebra,
    WindowSpec,
    cocenter_window,
    cocenter_window_elimination,
    exploratory_z2_report,
    load_form,
    load_group,
    quantum_torus,
)

SWAP4 = tuple(tuple(int(j == (i + 2) % 4) for j in range(4)) for i in range(4))


def test_multiply_examples():
    alg = quantum_torus(2)
    X, Y = Symbol((1, 0), 0), Symbol((0, 1), 0)
    assert alg.multiply(X, Y) == (1, Symbol((1, 1), 0))
    assert alg.multiply(Y, X) == (-1, Symbol((1, 1), 0))
    u = alg.unit()
    assert alg.multiply(u, X) == (0, X) and alg.multiply(X, u) == (0, X)
    twisted = TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION])
    w = Symbol((0, 0), 1)
    assert twisted.multiply(w, X) == (0, Symbol((-1, 0), 1))
    assert twisted.multiply(w, w)[1] == twisted.unit()


def _assoc(alg, rng, trials=60):
    n = len(alg.group)
    for _ in range(trials):
        x, y, z = (Symbol(tuple(rng.randint(-3, 3) for _ in range(alg.rank)), rng.randrange(n)) for _ in range(3))
        e1, xy = alg.multiply(x, y)
        e2, left = alg.multiply(xy, z)
        f1, yz = alg.multiply(y, z)
        f2, right = alg.multiply(x, yz)
        assert left == right and e1 + e2 == f1 + f2


def test_associativity():
    rng = random.Random(5)
    _assoc(TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION]), rng)
    _assoc(TwistedLatticeAlgebra(quantum_torus(4).form, [SWAP4]), rng)
    _assoc(quantum_torus(4), rng)


def test_group_closure_and_classes():
    alg = TwistedLatticeAlgebra(STANDARD_FORM, [((0, -1), (1, 0))])
    assert len(alg.group) == 4
    # abelian group: every element is its own class
    assert [alg.conjugacy_class(w) for w in range(4)] == [0, 1, 2, 3]


def test_trivial_group_stabilizes_at_one():
    est = cocenter_window(quantum_torus(2), WindowSpec(2, 6))
    assert est.stabilized
    assert est.final == 1
    assert est.dims[-3:] == [1, 1, 1]


def test_commutative_case_does_not_stabilize():
    est = cocenter_window(TwistedLatticeAlgebra(((0, 0), (0, 0))), WindowSpec(2, 6))
    assert est.dims == [25] * 5
    assert not est.stabilized


@pytest.mark.parametrize("alg", [quantum_torus(2), TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION])], ids=["trivial", "z2"])
def test_monotone_in_R_and_r(alg):
    est = cocenter_window(alg, WindowSpec(2, 5))
    assert all(a >= b for a, b in zip(est.dims, est.dims[1:]))
    small = cocenter_window(alg, WindowSpec(1, 5)).final
    assert small <= est.final


@pytest.mark.parametrize("r,R", [(0, 1), (1, 1), (1, 2), (0, 2)])
def test_union_find_matches_elimination(r, R):
    for alg in (quantum_torus(2), TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION]),
                TwistedLatticeAlgebra(((0, 2), (-2, 0)))):
        assert cocenter_window(alg, WindowSpec(r, R)).final == cocenter_window_elimination(alg, WindowSpec(r, R))


def test_blocks_sum_to_dims():
    est = cocenter_window(TwistedLatticeAlgebra(STANDARD_FORM, [NEGATION]), WindowSpec(2, 5))
    assert all(sum(b.values()) == d for b, d in zip(est.blocks, est.dims))


def test_cap_and_validation():
    with pytest.raises(CapExceeded):
        cocenter_window(quantum_torus(4), WindowSpec(1, 5), cap=1000)
    with pytest.raises(AlgebraError, match="skew"):
        TwistedLatticeAlgebra(((0, 1), (1, 0)))
    with pytest.raises(AlgebraError, match="even"):
        TwistedLatticeAlgebra(((0,),))
    with pytest.raises(AlgebraError, match="preserve"):
        TwistedLatticeAlgebra(STANDARD_FORM, [((1, 1), (0, 2))])
    with pytest.raises(AlgebraError, match="too large"):
        TwistedLatticeAlgebra(STANDARD_FORM, [((1, 1), (0, 1))])
    with pytest.raises(ValueError):
        WindowSpec(3, 2)


def test_exploratory_report_is_labelled():
    est = exploratory_z2_report()
    assert est.label == "ORACLE"
    assert est.to_tsv().startswith("# ORACLE")
    assert any("not an acceptance gate" in n for n in est.notes)
    data = json.loads(est.to_json())
    assert data["final"] == est.final and data["dims"] == est.dims


def test_loaders():
    assert load_form('{"S": [[0, 1], [-1, 0]]}') == STANDARD_FORM
    assert load_form("[[0, 1], [-1, 0]]") == STANDARD_FORM
    assert load_group('{"generators": [[[-1, 0], [0, -1]]]}') == [NEGATION]
    assert load_group("[]") == []
