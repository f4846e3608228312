"""Arithmetic functions and closed-form skein module dimension tables.

Every table entry carries a provenance string saying which closed form or
derivation produced it, so a report never prints an unattributed number.
"""

from __future__ import annotations

import gc
import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Callable, NamedTuple

from .grading import GroupDatum

# ------------------------------------------------------------------ arithmetic


@lru_cache(maxsize=None)
def partition_number(n: int) -> int:
    """Number of partitions of ``n`` (``P(0) = 1``)."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors of a positive integer only")
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined on positive integers")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def dirichlet_convolution(f: Callable[[int], int], g: Callable[[int], int]) -> Callable[[int], int]:
    def h(n: int) -> int:
        return sum(f(d) * g(n // d) for d in divisors(n))

    return h


def jordan_totient3(n: int) -> int:
    """Mobius inversion of the cube function."""
    return dirichlet_convolution(lambda d: d**3, mobius)(n)


# ------------------------------------------------------------------ tables


@contextmanager
def _bulk_build():
    """Pause the cyclic collector while building large acyclic tables.

    A g = 8 table allocates about half a million tuples; with a big live heap
    the collector otherwise dominates the build time.
    """
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


class Reading(str, Enum):
    LITERAL_GCD = "literal_gcd"
    PARTITION_GCD = "partition_gcd"


class GradedKey(NamedTuple):
    """A class in H_1(M, Z/N): ``("sigma", (eps, v))`` or ``("t3", (a, b, c))``."""

    tag: str
    data: tuple

    @property
    def descriptor(self) -> str:
        if self.tag == "sigma":
            eps, v = self.data
            return f"({eps},{''.join(map(str, v))})"
        return "(" + ",".join(map(str, self.data)) + ")"

    def is_zero(self) -> bool:
        if self.tag == "sigma":
            return self.data[0] == 0 and not any(self.data[1])
        return not any(self.data)

    def scaled(self, u: int, N: int) -> "GradedKey":
        if self.tag == "sigma":
            eps, v = self.data
            return GradedKey("sigma", ((u * eps) % N, tuple((u * x) % N for x in v)))
        return GradedKey(self.tag, tuple((u * x) % N for x in self.data))


@dataclass(frozen=True)
class Entry:
    value: int
    provenance: str


@dataclass
class GradedDimTable:
    """Partial map ``(grading class, twist class) -> dim`` for one group and manifold."""

    group: GroupDatum
    manifold: str
    params: dict
    zero: GradedKey
    entries: dict[tuple[GradedKey, GradedKey], Entry] = field(default_factory=dict)
    total: Entry | None = None
    reading: Reading | None = None
    notes: list[str] = field(default_factory=list)

    def set(self, a: GradedKey, b: GradedKey, value: int, provenance: str):
        if not provenance:
            raise ValueError("every entry needs a provenance")
        self.entries[(a, b)] = Entry(value, provenance)

    def graded_row(self) -> dict[GradedKey, Entry]:
        """Entries ``(a, 0)``: untwisted, a-graded."""
        return {a: e for (a, b), e in self.entries.items() if b == self.zero}

    def cograded_row(self) -> dict[GradedKey, Entry]:
        """Entries ``(0, a)``: degree zero, a-twisted."""
        return {b: e for (a, b), e in self.entries.items() if a == self.zero}

    def rows(self) -> list[tuple[str, str, int, str]]:
        names: dict[GradedKey, str] = {}

        def name(k: GradedKey) -> str:
            d = names.get(k)
            if d is None:
                d = names[k] = k.descriptor
            return d

        out = [(name(a), name(b), e.value, e.provenance) for (a, b), e in sorted(self.entries.items())]
        if self.total is not None:
            out.append(("total", "-", self.total.value, self.total.provenance))
        return out

    def to_tsv(self) -> str:
        return "".join(f"{a}\t{b}\t{v}\t{p}\n" for a, b, v, p in self.rows())

    def to_json(self) -> str:
        data = {
            "group": str(self.group),
            "manifold": self.manifold,
            "params": self.params,
            "reading": self.reading.value if self.reading else None,
            "entries": [{"a": a, "b": b, "dim": v, "provenance": p} for a, b, v, p in self.rows() if a != "total"],
            "total": None if self.total is None else {"dim": self.total.value, "provenance": self.total.provenance},
            "notes": self.notes,
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------- SL_2 on Sigma_g x S^1

SIGMA_TOTAL_PROVENANCE = "SL2 skein module of Sigma_g x S1, closed form 2^(2g+1)+2g-1"


def total_sl2_sigma(g: int) -> int:
    if g < 1:
        raise ValueError("genus must be at least 1")
    return 2 ** (2 * g + 1) + 2 * g - 1


def sigma_classes(g: int) -> list[GradedKey]:
    return [GradedKey("sigma", (eps, v)) for eps in (0, 1) for v in product((0, 1), repeat=2 * g)]


def _sigma_case(g: int, key: GradedKey) -> tuple[int, str]:
    eps, v = key.data
    if not any(v):
        if eps == 0:
            return g + 1, "case a=(0,0): g+1"
        return g, "case a=(1,0): g"
    # read literally: every remaining class, including eps = 1 with v != 0
    return 1, "case otherwise: 1"


def _sigma_table(g: int, cograded: bool) -> GradedDimTable:
    zero = GradedKey("sigma", (0, (0,) * (2 * g)))
    t = GradedDimTable(GroupDatum("SL", 2), "sigma_g_x_s1", {"g": g}, zero)
    source = "SL2 Sigma_g x S1 twisted (degree 0) table" if cograded else "SL2 Sigma_g x S1 graded table"
    # three distinct cases, so share one Entry per case
    shared: dict[tuple[int, str], Entry] = {}
    with _bulk_build():
        for key in sigma_classes(g):
            case = _sigma_case(g, key)
            entry = shared.get(case)
            if entry is None:
                entry = shared[case] = Entry(case[0], f"{source}, {case[1]}")
            t.entries[(zero, key) if cograded else (key, zero)] = entry
    t.total = Entry(total_sl2_sigma(g), SIGMA_TOTAL_PROVENANCE)
    return t


def graded_sl2_sigma(g: int) -> GradedDimTable:
    """Untwisted a-graded pieces ``(a, 0)`` over all ``2^(2g+1)`` classes."""
    return _sigma_table(g, cograded=False)


def cograded_sl2_sigma(g: int) -> GradedDimTable:
    """Degree-zero a-twisted pieces ``(0, a)``; same case table as the graded one."""
    return _sigma_table(g, cograded=True)


# ---------------------------------------------------------- SL_N on T^3

T3_TOTAL_PROVENANCE = "SL_N skein module of T3, (P*J3)(N) triple divisor sum"


def total_sln_t3_triple(N: int) -> int:
    """``sum over N = d e f of P(d) e^3 mu(f)``."""
    total = 0
    for d in divisors(N):
        for e in divisors(N // d):
            total += partition_number(d) * e**3 * mobius(N // (d * e))
    return total


def total_sln_t3_convolution(N: int) -> int:
    return dirichlet_convolution(partition_number, jordan_totient3)(N)


def total_sln_t3(N: int) -> int:
    a, b = total_sln_t3_triple(N), total_sln_t3_convolution(N)
    if a != b:
        raise ArithmeticError(f"triple sum {a} and convolution {b} disagree at N={N}")
    return a


def t3_classes(N: int) -> list[GradedKey]:
    return [GradedKey("t3", k) for k in product(range(N), repeat=3)]


READING_NOTE = (
    "reading ambiguity: the literal gcd(a,b,c,N) table misses the total for some N; "
    "the partition reading P(gcd(a,b,c,N)) restores it; neither is declared correct"
)


def graded_sln_t3(N: int, reading: Reading = Reading.LITERAL_GCD) -> GradedDimTable:
    if N < 2:
        raise ValueError("N must be at least 2")
    reading = Reading(reading)
    zero = GradedKey("t3", (0, 0, 0))
    t = GradedDimTable(GroupDatum("SL", N), "torus3", {"N": N}, zero, reading=reading)
    for key in t3_classes(N):
        d = gcd(gcd(*key.data), N)
        if reading is Reading.LITERAL_GCD:
            t.set(key, zero, d, "SL_N T3 graded table, gcd(a,b,c,N) read literally")
        else:
            t.set(key, zero, partition_number(d), "SL_N T3 graded table, read as P(gcd(a,b,c,N))")
    t.total = Entry(total_sln_t3(N), T3_TOTAL_PROVENANCE)
    if sum(e.value for e in t.graded_row().values()) != t.total.value:
        t.notes.append(READING_NOTE)
    return t


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


RESIDUAL_PROVENANCE = "derived residual: total minus (N^3-1)"


def cograded_sln_t3_prime(N: int) -> GradedDimTable:
    """Degree-zero twisted pieces for prime N; the untwisted corner is a residual."""
    if not is_prime(N):
        raise ValueError(f"twisted T3 dimensions are only known for prime N, got {N}")
    zero = GradedKey("t3", (0, 0, 0))
    t = GradedDimTable(GroupDatum("SL", N), "torus3", {"N": N}, zero)
    total = total_sln_t3(N)
    for key in t3_classes(N):
        if not key.is_zero():
            t.set(zero, key, 1, "SL_N T3 twisted (degree 0) table, prime N, nonzero twist: 1")
    residual = total - (N**3 - 1)
    t.set(zero, zero, residual, RESIDUAL_PROVENANCE)
    t.total = Entry(total, T3_TOTAL_PROVENANCE)
    if residual == partition_number(N):
        t.notes.append(f"residual {residual} equals P({N})")
    return t
