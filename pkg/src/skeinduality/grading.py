"""Center gradings of type A irreducibles and the degree map from labelled skeins to 1-cycles."""

from __future__ import annotations

import cmath
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exactalg import IntMatrix, solve_integer, solve_mod
from .homology import CycleError, CycleOne, Manifold, check_cycle, homology_class, pairing_matrix


@dataclass(frozen=True)
class GroupDatum:
    """``SL_N`` (simply connected) or ``PGL_N`` (adjoint)."""

    family: str
    N: int

    def __post_init__(self):
        if self.family not in ("SL", "PGL"):
            raise ValueError(f"only type A is implemented, got {self.family!r}")
        if self.N < 2:
            raise ValueError("N must be at least 2")

    @property
    def center_order(self) -> int:
        return self.N if self.family == "SL" else 1

    @property
    def fundamental_group_order(self) -> int:
        return 1 if self.family == "SL" else self.N

    def langlands_dual(self) -> "GroupDatum":
        return GroupDatum("PGL" if self.family == "SL" else "SL", self.N)

    def __str__(self):
        return f"{self.family}{self.N}"


@dataclass(frozen=True)
class IrrepLabel:
    """Highest weight in fundamental-weight coordinates ``(c_1, ..., c_{N-1})``."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if any(c < 0 for c in self.coords):
            raise ValueError("highest weight coordinates must be non-negative")

    @classmethod
    def sl2(cls, k: int) -> "IrrepLabel":
        return cls((k,))

    @classmethod
    def fundamental(cls, i: int, N: int) -> "IrrepLabel":
        return cls(tuple(int(j == i) for j in range(1, N)))

    def __add__(self, other: "IrrepLabel") -> "IrrepLabel":
        return IrrepLabel(tuple(a + b for a, b in zip(self.coords, other.coords)))


def _check_rank(g: GroupDatum, v: IrrepLabel):
    if len(v.coords) != g.N - 1:
        raise ValueError(f"{g} labels need {g.N - 1} coordinates, got {len(v.coords)}")


def center_degree(g: GroupDatum, v: IrrepLabel) -> int:
    """The character of the center ``Z/N`` by which ``V(v)`` is acted upon."""
    if g.family != "SL":
        raise ValueError("the center grading lives on the simply connected side")
    _check_rank(g, v)
    return sum(i * c for i, c in enumerate(v.coords, start=1)) % g.N


def cartan_matrix(N: int) -> IntMatrix:
    n = N - 1
    return IntMatrix.from_rows([[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)], n)


def in_root_lattice(N: int, weight: Sequence[int]) -> bool:
    """Whether a weight (fundamental coordinates) is an integer combination of simple roots."""
    # simple root alpha_j has fundamental coordinates given by row j of the Cartan matrix
    return solve_integer(cartan_matrix(N).transpose(), list(weight)) is not None


def center_degree_bruteforce(N: int, v: IrrepLabel) -> int:
    """The unique ``k`` with ``v - k omega_1`` in the root lattice."""
    for k in range(N):
        shifted = list(v.coords)
        shifted[0] -= k
        if in_root_lattice(N, shifted):
            return k
    raise AssertionError("weight lattice modulo roots should be Z/N")


def descends_to_adjoint(N: int, v: IrrepLabel) -> bool:
    """``V(v)`` is a PGL_N representation iff its highest weight is in the root lattice."""
    return in_root_lattice(N, v.coords)


# ------------------------------------------------------------------ skein cycles


@dataclass(frozen=True)
class LabelledSkeinCycle:
    """A skein supported on 1-cells of a registry complex.

    ``labels`` maps a 1-cell index to ``(label, orientation)`` with orientation
    +1 when the skein runs along the cell's own direction. ``coupons`` lists the
    0-cells carrying coupons; balance is required at every 0-cell regardless.
    """

    manifold: Manifold
    group: GroupDatum
    labels: Mapping[int, tuple[IrrepLabel, int]] = field(default_factory=dict)
    coupons: tuple[int, ...] = ()

    def degree_chain(self) -> CycleOne:
        n1 = self.manifold.complex.cells[1]
        chain = [0] * n1
        for cell, (lab, orient) in self.labels.items():
            if not 0 <= cell < n1:
                raise ValueError(f"1-cell {cell} does not exist")
            if orient not in (1, -1):
                raise ValueError("orientation must be +1 or -1")
            chain[cell] += orient * center_degree(self.group, lab)
        return CycleOne(self.group.N, tuple(chain))


def skein_cycle_class(s: LabelledSkeinCycle) -> tuple[int, ...]:
    """Homology class in H_1(M, Z/N) of the degree-weighted support, in the labeled basis."""
    gamma = s.degree_chain()
    try:
        check_cycle(s.manifold, gamma)
    except CycleError as exc:
        raise CycleError(f"coupon imbalance: {exc}") from None
    return homology_class(s.manifold, gamma.chain, gamma.modulus)


# ------------------------------------------------------------------ H_2 action


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2 pi i exponent / order)`` stored exactly."""

    exponent: int
    order: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def value(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)

    def as_sign(self) -> int:
        if self.exponent == 0:
            return 1
        if 2 * self.exponent == self.order:
            return -1
        raise ValueError(f"{self} is not real")

    def __eq__(self, other):
        if isinstance(other, int):
            try:
                return self.as_sign() == other
            except ValueError:
                return False
        if isinstance(other, RootOfUnity):
            return self.exponent * other.order == other.exponent * self.order
        return NotImplemented

    def __hash__(self):
        try:
            return hash(self.as_sign())
        except ValueError:
            return hash(Fraction(self.exponent, self.order))

    def __str__(self):
        return f"zeta_{self.order}^{self.exponent}"


@dataclass(frozen=True)
class Character:
    """``x -> zeta_N^(k x)`` on Z/N."""

    k: int
    N: int

    def __call__(self, x: int) -> RootOfUnity:
        return RootOfUnity(self.k * x, self.N)

    @property
    def is_trivial(self) -> bool:
        return self.k % self.N == 0


def h2_action_eigenvalue(m: Manifold, sigma: Sequence[int], a: Sequence[int], chi: Character) -> RootOfUnity:
    """``chi(<sigma, a>)``: how the H_2 class ``sigma`` acts on the ``a``-graded piece."""
    p = pairing_matrix(m)
    if len(sigma) != len(p) or len(a) != len(p[0]):
        raise ValueError("coordinate vectors do not match the labeled bases")
    value = sum(s * p[i][j] * x for i, s in enumerate(sigma) for j, x in enumerate(a))
    return chi(value % chi.N)


def class_from_eigenvalues(m: Manifold, exponents: Sequence[int], N: int) -> tuple[int, ...] | None:
    """Recover ``a`` from ``<e_i, a> mod N`` for every H_2 basis vector ``e_i``."""
    p = pairing_matrix(m)
    return solve_mod(IntMatrix.from_rows([list(r) for r in p], len(p[0])), list(exponents), N)
