import random
from itertools import product
from math import comb

import pytest

from skeinduality.bracket import (
    Crossing,
    DefectError,
    DefectMarking,
    DiagramError,
    TangleDiagram,
    bracket_value,
    braid_closure,
    braid_tangle,
    closure,
    derive_crossing_expansion,
    format_diagram,
    insert_kink,
    link_diagram,
    parse_defect,
    parse_diagram,
    r2_pair,
    r3_pair,
    resolve,
    resolve_sequential,
    stack,
    twisted_bracket,
)
from skeinduality.exactalg import DELTA, ONE, A, A_pow
from skeinduality.tlcat import closure as tl_closure
from skeinduality.tlcat import compose, generator, identity

HOPF = link_diagram([Crossing((1, 3, 2, 4)), Crossing((3, 1, 4, 2))])


def oracle_bracket(crossings, free_loops=0):
    """Independent state sum for closed PD diagrams: count components per state."""
    arcs = sorted({a for x in crossings for a in x.arcs}, key=repr)
    total = 0 * ONE
    for state in product((0, 1), repeat=len(crossings)):
        adj = {a: [] for a in arcs}
        for x, s in zip(crossings, state):
            a, b, c, d = x.arcs if x.sign == "+" else x.arcs[1:] + x.arcs[:1]
            pairs = [(a, b), (c, d)] if s == 0 else [(a, d), (b, c)]
            for u, v in pairs:
                adj[u].append(v)
                adj[v].append(u)
        seen, comps = set(), 0
        for a in arcs:
            if a in seen:
                continue
            comps += 1
            stack_ = [a]
            while stack_:
                u = stack_.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack_.extend(adj[u])
        n_a = state.count(0)
        total = total + A_pow(n_a - (len(state) - n_a)) * DELTA ** (comps + free_loops)
    return total


def two_strand_oracle(k: int):
    """closure of (A id + A^-1 e)^k in TL_2 by the binomial expansion, e^j = delta^{j-1} e."""
    x = A if k >= 0 else A**-1
    y = A**-1 if k >= 0 else A
    k = abs(k)
    out = x**k * DELTA**2
    for j in range(1, k + 1):
        out = out + comb(k, j) * x ** (k - j) * y**j * DELTA ** (j - 1) * DELTA
    return out


def test_crossing_expansion():
    alpha, beta, delta = derive_crossing_expansion()
    assert beta == A**-1
    assert alpha * beta == ONE
    assert delta == DELTA
    assert alpha * alpha + beta * beta + alpha * beta * delta == 0 * ONE


def test_unknot_and_unlink():
    assert bracket_value(link_diagram([], free_loops=1)) == DELTA
    assert bracket_value(link_diagram([], free_loops=2)) == DELTA**2
    assert bracket_value(link_diagram([])) == ONE


def test_hopf_link():
    expected = (-(A**4) - A**-4) * DELTA
    assert bracket_value(HOPF) == expected
    assert bracket_value(HOPF) == oracle_bracket(HOPF.crossings)


@pytest.mark.parametrize("k", [1, 2, 3, 4, -1, -3, 5])
def test_two_strand_torus_links(k):
    word = [1 if k > 0 else -1] * abs(k)
    assert bracket_value(braid_closure(word, 2)) == two_strand_oracle(k)


def test_trefoil_value():
    expected = (A**-7 - A**-3 - A**5) * DELTA
    assert bracket_value(braid_closure([1, 1, 1], 2)) == expected


def test_single_crossing_tangle():
    assert resolve(braid_tangle([1], 2)) == identity(2).scale(A) + generator(1, 2).scale(A**-1)
    assert resolve(braid_tangle([-1], 2)) == identity(2).scale(A**-1) + generator(1, 2).scale(A)
    assert resolve(braid_tangle([], 2)) == identity(2)


def test_braid_relations_as_tangles():
    assert resolve(braid_tangle([1, 2, 1], 3)) == resolve(braid_tangle([2, 1, 2], 3))
    assert resolve(braid_tangle([1, -1], 2)) == identity(2)
    # tangle resolution is a functor: stacking maps to composition
    lower, upper = braid_tangle([1, 2], 3), braid_tangle([-1, 2], 3)
    assert resolve(stack(lower, upper)) == compose(resolve(lower), resolve(upper))


def test_resolution_order_independent():
    rng = random.Random(7)
    for _ in range(10):
        word = [rng.choice((1, -1)) * rng.randint(1, 2) for _ in range(rng.randint(1, 5))]
        t = braid_tangle(word, 3)
        order = list(range(len(t.crossings)))
        rng.shuffle(order)
        assert resolve_sequential(t, order) == resolve(t)


def test_random_closures_against_oracle():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(2, 4)
        word = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 5))]
        link = braid_closure(word, n)
        assert bracket_value(link) == oracle_bracket(link.crossings, link.free_loops)
        # trace closure of the resolved braid agrees with resolving the closed diagram
        assert bracket_value(link) == tl_closure(resolve(braid_tangle(word, n)))


def test_reidemeister_moves_sampled():
    rng = random.Random(3)
    for _ in range(10):
        a, b = r2_pair(rng, 3)
        assert bracket_value(braid_closure(a, 3)) == bracket_value(braid_closure(b, 3))
        a, b = r3_pair(rng, 4)
        assert bracket_value(braid_closure(a, 4)) == bracket_value(braid_closure(b, 4))


def test_kink_factors():
    base = braid_closure([1, 1, 1], 2)
    arc = next(iter(base.arcs))
    assert bracket_value(insert_kink(base, arc, True)) == bracket_value(base) * (-(A**3))
    assert bracket_value(insert_kink(base, arc, False)) == bracket_value(base) * (-(A**-3))
    t = braid_tangle([], 1)
    assert resolve(insert_kink(t, t.bottom[0], True)) == identity(1).scale(-(A**3))


def test_malformed_diagrams():
    with pytest.raises(DiagramError):
        link_diagram([Crossing((1, 2, 3, 4))])
    with pytest.raises(DiagramError):
        Crossing((1, 2, 3))
    with pytest.raises(DiagramError):
        Crossing((1, 2, 3, 4), "x")
    with pytest.raises(DiagramError):
        bracket_value(braid_tangle([1], 2))


def test_text_round_trip():
    text = "# Hopf link\nX 1 3 2 4\nX 3 1 4 2\n"
    link = parse_diagram(text)
    assert bracket_value(link) == bracket_value(HOPF)
    assert bracket_value(parse_diagram(format_diagram(link))) == bracket_value(link)
    tangle = braid_tangle([1, -2], 3)
    again = parse_diagram(format_diagram(tangle))
    assert resolve(again) == resolve(tangle)
    assert bracket_value(parse_diagram("L 2\n")) == DELTA**2
    with pytest.raises(DiagramError):
        parse_diagram("Y 1 2 3 4\n")


def test_twisted_bracket():
    unknot = closure(braid_tangle([1], 2))
    base = bracket_value(unknot)
    arc = sorted(unknot.arcs)[0]
    assert twisted_bracket(unknot, DefectMarking(())) == base
    assert twisted_bracket(unknot, DefectMarking(((arc, 1), (arc, -1)))) == base
    assert twisted_bracket(unknot, DefectMarking(((arc, 1), (arc, 1)), -1)) == base
    with pytest.raises(DefectError):
        twisted_bracket(unknot, DefectMarking(((arc, 1),)))
    with pytest.raises(DefectError):
        twisted_bracket(unknot, DefectMarking((("nope", 1), ("nope", -1))))
    with pytest.raises(DefectError):
        DefectMarking((), character=2)


def test_parse_defect():
    d = parse_defect("I 1 +\nI 2 -\n")
    assert d.intersections == (("1", 1), ("2", -1))
    with pytest.raises(DefectError):
        parse_defect("I 1 *\n")


def test_closure_counts_free_loops():
    t = TangleDiagram((), (0, 1), (0, 1))
    assert closure(t).free_loops == 2
    assert bracket_value(closure(braid_tangle([], 3))) == DELTA**3
