import json
from math import gcd

import pytest

from skeinduality.dims import (
    READING_NOTE,
    RESIDUAL_PROVENANCE,
    GradedKey,
    Reading,
    cograded_sl2_sigma,
    cograded_sln_t3_prime,
    dirichlet_convolution,
    divisors,
    graded_sl2_sigma,
    graded_sln_t3,
    jordan_totient3,
    mobius,
    partition_number,
    total_sl2_sigma,
    total_sln_t3,
    total_sln_t3_convolution,
    total_sln_t3_triple,
)


def partitions_bruteforce(n: int, largest: int | None = None) -> int:
    largest = n if largest is None else largest
    if n == 0:
        return 1
    return sum(partitions_bruteforce(n - k, k) for k in range(1, min(n, largest) + 1))


def test_partition_numbers():
    assert [partition_number(n) for n in (0, 1, 4, 10)] == [1, 1, 5, 42]
    for n in range(25):
        assert partition_number(n) == partitions_bruteforce(n)


def test_mobius_and_divisors():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    for n in range(2, 60):
        assert sum(mobius(d) for d in divisors(n)) == 0


def test_convolution_laws():
    fs = [partition_number, jordan_totient3, mobius, lambda n: n * n - 1, lambda n: n % 3]
    for f in fs:
        for g in fs:
            fg, gf = dirichlet_convolution(f, g), dirichlet_convolution(g, f)
            for h in fs[:3]:
                left = dirichlet_convolution(fg, h)
                right = dirichlet_convolution(f, dirichlet_convolution(g, h))
                assert all(left(n) == right(n) for n in range(1, 31))
            assert all(fg(n) == gf(n) for n in range(1, 61))


def test_jordan_totient_by_counting():
    for n in range(1, 13):
        count = sum(1 for a in range(n) for b in range(n) for c in range(n) if gcd(gcd(gcd(a, b), c), n) == 1)
        assert jordan_totient3(n) == count
    assert jordan_totient3(6) == 182


@pytest.mark.parametrize("g,total", [(1, 9), (2, 35), (3, 133)])
def test_sigma_totals(g, total):
    assert total_sl2_sigma(g) == total


@pytest.mark.parametrize("g", range(1, 9))
def test_sigma_graded_sums_match(g):
    graded = graded_sl2_sigma(g).graded_row()
    cograded = cograded_sl2_sigma(g).cograded_row()
    for row in (graded, cograded):
        assert len(row) == 2 ** (2 * g + 1)
        assert sum(e.value for e in row.values()) == total_sl2_sigma(g)
    assert {k: e.value for k, e in graded.items()} == {k: e.value for k, e in cograded.items()}


def test_sigma_table_examples():
    t = graded_sl2_sigma(2)
    zero = t.zero
    row = t.graded_row()
    assert row[zero].value == 3
    assert row[GradedKey("sigma", (1, (0, 0, 0, 0)))].value == 2
    assert row[GradedKey("sigma", (0, (1, 0, 0, 0)))].value == 1
    assert row[GradedKey("sigma", (1, (0, 1, 1, 0)))].value == 1
    with pytest.raises(ValueError):
        total_sl2_sigma(0)


def test_t3_totals():
    assert [total_sln_t3(n) for n in (1, 2, 3)] == [1, 9, 29]
    for n in range(1, 31):
        assert total_sln_t3_triple(n) == total_sln_t3_convolution(n)


@pytest.mark.parametrize("N", [2, 3])
def test_readings_agree_for_small_N(N):
    a = graded_sln_t3(N, Reading.LITERAL_GCD)
    b = graded_sln_t3(N, Reading.PARTITION_GCD)
    assert {k: e.value for k, e in a.graded_row().items()} == {k: e.value for k, e in b.graded_row().items()}
    assert sum(e.value for e in a.graded_row().values()) == a.total.value
    assert not a.notes and not b.notes


@pytest.mark.parametrize("N,literal", [(4, 74), (5, 129)])
def test_literal_reading_misses_total(N, literal):
    lit = graded_sln_t3(N, Reading.LITERAL_GCD)
    part = graded_sln_t3(N, Reading.PARTITION_GCD)
    assert sum(e.value for e in lit.graded_row().values()) == literal
    assert READING_NOTE in lit.notes
    assert sum(e.value for e in part.graded_row().values()) == part.total.value
    assert not part.notes


@pytest.mark.parametrize("N,residual", [(2, 2), (3, 3), (5, 7), (7, 15)])
def test_cograded_prime(N, residual):
    t = cograded_sln_t3_prime(N)
    row = t.cograded_row()
    assert len(row) == N**3
    corner = row[t.zero]
    assert corner.value == residual == partition_number(N)
    assert corner.provenance == RESIDUAL_PROVENANCE
    assert all(e.value == 1 for k, e in row.items() if not k.is_zero())
    assert sum(e.value for e in row.values()) == t.total.value
    assert f"residual {residual} equals P({N})" in t.notes


def test_cograded_composite_rejected():
    for n in (4, 6, 9):
        with pytest.raises(ValueError, match="prime"):
            cograded_sln_t3_prime(n)


def test_cross_family_agreement():
    assert total_sl2_sigma(1) == total_sln_t3(2) == 9


def test_serialization_deterministic():
    a, b = graded_sln_t3(3), graded_sln_t3(3)
    assert a.to_tsv() == b.to_tsv()
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert data["total"]["dim"] == 29
    assert all(e["provenance"] for e in data["entries"])
    assert a.to_tsv().splitlines()[-1].startswith("total\t-\t29\t")


def test_every_entry_has_provenance():
    t = graded_sl2_sigma(1)
    with pytest.raises(ValueError):
        t.set(t.zero, t.zero, 1, "")
