"""Kauffman bracket evaluation of framed tangle and link diagrams.

Crossings are given PD-style: four arc labels in counterclockwise order. With
sign ``+`` the first and third arcs form the under-strand; with ``-`` the second
and fourth do. A ``+`` crossing ``(a, b, c, d)`` smooths as

    <X> = A <a-b, c-d> + A^-1 <a-d, b-c>

which makes the positive braid generator ``A id + A^-1 e``. Framing is the
blackboard framing, so a kink is a factor ``-A^{+-3}`` rather than an invariance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .exactalg import A, ONE, A_pow, LaurentPoly, RatFunc, as_ratfunc
from .tlcat import PlanarMatching, TlElement, scalar

Arc = Hashable


class DiagramError(ValueError):
    """Malformed arc incidence or boundary data."""


class DefectError(ValueError):
    """The defect curve is not transverse to the diagram."""


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[Arc, Arc, Arc, Arc]
    sign: str = "+"

    def __post_init__(self):
        if len(self.arcs) != 4:
            raise DiagramError(f"crossing needs four arcs, got {self.arcs}")
        if self.sign not in "+-" or len(self.sign) != 1:
            raise DiagramError(f"crossing sign must be '+' or '-', got {self.sign!r}")

    def normalized(self) -> tuple[Arc, Arc, Arc, Arc]:
        """Arcs rotated so that the first one is an under-arc."""
        a, b, c, d = self.arcs
        return (a, b, c, d) if self.sign == "+" else (b, c, d, a)


@dataclass(frozen=True)
class TangleDiagram:
    """A planar diagram from ``bottom`` boundary arcs to ``top`` boundary arcs.

    ``free_loops`` counts crossingless closed components, which the arc
    incidence cannot otherwise express.
    """

    crossings: tuple[Crossing, ...]
    bottom: tuple[Arc, ...] = ()
    top: tuple[Arc, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        counts: dict[Arc, int] = {}
        for x in self.crossings:
            for arc in x.arcs:
                counts[arc] = counts.get(arc, 0) + 1
        for arc in self.bottom + self.top:
            counts[arc] = counts.get(arc, 0) + 1
        bad = {arc: k for arc, k in counts.items() if k != 2}
        if bad:
            raise DiagramError(f"every arc needs exactly two endpoints; offending arcs: {bad}")
        if (len(self.bottom) + len(self.top)) % 2:
            raise DiagramError("odd number of boundary points")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")

    @property
    def arcs(self) -> set[Arc]:
        return {a for x in self.crossings for a in x.arcs} | set(self.bottom) | set(self.top)

    def is_closed(self) -> bool:
        return not self.bottom and not self.top


def link_diagram(crossings: Iterable[Crossing], free_loops: int = 0) -> TangleDiagram:
    return TangleDiagram(tuple(crossings), (), (), free_loops)


# ---------------------------------------------------------------- expansion


def derive_crossing_expansion(alpha: RatFunc = A) -> tuple[RatFunc, RatFunc, RatFunc]:
    """Solve Reidemeister II for the crossing weights.

    Writing a crossing as ``alpha id + beta e`` and its inverse with the roles
    swapped, R2 demands ``alpha beta = 1`` and ``alpha^2 + beta^2 + alpha beta
    delta = 0``. Returns ``(alpha, beta, delta)``.
    """
    alpha = as_ratfunc(alpha)
    beta = alpha.inverse()  # coefficient of id in sigma * sigma^-1
    delta = -(alpha * alpha + beta * beta) / (alpha * beta)
    return alpha, beta, delta


# ---------------------------------------------------------------- state sum


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _state_outcome(t: TangleDiagram, choices: Sequence[int]) -> tuple[PlanarMatching, int]:
    """Boundary matching and loop count after smoothing with ``choices``.

    ``choices[i] == 0`` is the A-smoothing of crossing ``i``.
    """
    uf = _UnionFind(t.arcs)
    for x, ch in zip(t.crossings, choices):
        a, b, c, d = x.normalized()
        if ch == 0:
            uf.union(a, b)
            uf.union(c, d)
        else:
            uf.union(a, d)
            uf.union(b, c)
    m = len(t.bottom)
    ends: dict[Arc, list[int]] = {}
    for pos, arc in enumerate(t.bottom + t.top):
        ends.setdefault(uf.find(arc), []).append(pos)
    for root, pts in ends.items():
        if len(pts) != 2:
            raise DiagramError("smoothing produced a strand with more than two ends")
    loops = len({uf.find(a) for a in t.arcs} - set(ends)) + t.free_loops
    try:
        mat = PlanarMatching.from_pairs(m, len(t.top), (tuple(p) for p in ends.values()))
    except ValueError as exc:
        raise DiagramError(f"diagram is not planar: {exc}") from None
    return mat, loops


def _laurent_weight(a_count: int, b_count: int, loops: int) -> LaurentPoly:
    # A^(a-b) * (-A^2 - A^-2)^loops
    base = LaurentPoly({a_count - b_count: 1})
    delta = LaurentPoly({2: -1, -2: -1})
    return base * delta**loops


def resolve(t: TangleDiagram) -> TlElement:
    """Full state sum of ``t`` as a Temperley-Lieb element."""
    acc: dict[PlanarMatching, LaurentPoly] = {}
    c = len(t.crossings)
    for choices in itertools.product((0, 1), repeat=c):
        mat, loops = _state_outcome(t, choices)
        nb = sum(choices)
        w = _laurent_weight(c - nb, nb, loops)
        acc[mat] = acc.get(mat, LaurentPoly()) + w
    return TlElement(len(t.bottom), len(t.top), {k: as_ratfunc(v) for k, v in acc.items()})


def resolve_sequential(t: TangleDiagram, order: Sequence[int] | None = None) -> TlElement:
    """Skein-expand one crossing at a time in the given order.

    Independent of :func:`resolve`'s enumeration; used to check that the
    result does not depend on the resolution order.
    """
    order = list(range(len(t.crossings))) if order is None else list(order)
    if sorted(order) != list(range(len(t.crossings))):
        raise ValueError("order must be a permutation of the crossing indices")
    out = TlElement(len(t.bottom), len(t.top))

    def expand(k: int, choices: dict[int, int], weight: RatFunc):
        nonlocal out
        if k == len(order):
            seq = [choices[i] for i in range(len(t.crossings))]
            mat, loops = _state_outcome(t, seq)
            out = out + TlElement.from_matching(mat, weight * as_ratfunc(_laurent_weight(0, 0, loops)))
            return
        idx = order[k]
        expand(k + 1, {**choices, idx: 0}, weight * A)
        expand(k + 1, {**choices, idx: 1}, weight * A_pow(-1))

    expand(0, {}, ONE)
    return out


def bracket_value(link: TangleDiagram) -> RatFunc:
    """Kauffman bracket with empty link -> 1 and unknot -> delta."""
    if not link.is_closed():
        raise DiagramError("bracket_value needs a closed diagram")
    return scalar(resolve(link))


# ---------------------------------------------------------------- defects


@dataclass(frozen=True)
class DefectMarking:
    """A crossing-free closed defect curve, recorded by where it meets the diagram.

    ``intersections`` lists ``(arc, +-1)`` for each transverse meeting of the
    defect with an arc; ``character`` is the value of the central element on
    the defining representation, so it must satisfy ``character**order == 1``.
    """

    intersections: tuple[tuple[Arc, int], ...]
    character: int = -1
    order: int = 2

    def __post_init__(self):
        if any(s not in (1, -1) for _, s in self.intersections):
            raise DefectError("intersection signs must be +1 or -1")
        if self.character not in (1, -1) or self.character**self.order != 1:
            raise DefectError(f"character {self.character} is not a unit of order dividing {self.order}")


def twisted_bracket(link: TangleDiagram, defect: DefectMarking) -> RatFunc:
    """Bracket where each strand passage through the defect contributes ``chi^{+-1}``."""
    arcs = link.arcs
    for arc, _ in defect.intersections:
        if arc not in arcs:
            raise DefectError(f"defect meets unknown arc {arc!r}")
    if link.is_closed() and len(defect.intersections) % 2:
        raise DefectError(
            "a closed planar curve meets a closed diagram an even number of times; "
            f"got {len(defect.intersections)} intersections"
        )
    exponent = sum(s for _, s in defect.intersections)
    # every state keeps every arc, so each state picks up the same factor
    return bracket_value(link) * as_ratfunc(defect.character) ** exponent


# ---------------------------------------------------------------- braids


def braid_tangle(word: Sequence[int], strands: int) -> TangleDiagram:
    """Tangle of a braid word; ``+i`` is the positive generator on strands ``i, i+1``.

    Strands run upwards; in a positive crossing the strand entering bottom-left
    passes over.
    """
    current = list(range(strands))
    bottom = tuple(current)
    fresh = itertools.count(strands)
    crossings = []
    for letter in word:
        i = abs(letter)
        if letter == 0 or i >= strands:
            raise DiagramError(f"generator {letter} invalid on {strands} strands")
        p = i - 1
        x1, x2 = current[p], current[p + 1]
        y1, y2 = next(fresh), next(fresh)
        if letter > 0:
            crossings.append(Crossing((x2, y2, y1, x1)))
        else:
            crossings.append(Crossing((x1, x2, y2, y1)))
        current[p], current[p + 1] = y1, y2
    return TangleDiagram(tuple(crossings), bottom, tuple(current))


def closure(t: TangleDiagram) -> TangleDiagram:
    """Trace closure: top arc ``i`` is joined round to bottom arc ``i``."""
    if len(t.bottom) != len(t.top):
        raise DiagramError("closure needs as many top as bottom endpoints")
    rename = {top: bot for top, bot in zip(t.top, t.bottom)}
    uf = _UnionFind(t.arcs)
    for top, bot in rename.items():
        uf.union(top, bot)
    crossings = tuple(Crossing(tuple(uf.find(a) for a in x.arcs), x.sign) for x in t.crossings)
    used = {a for x in crossings for a in x.arcs}
    loops = len({uf.find(a) for a in t.arcs} - used)
    return TangleDiagram(crossings, (), (), t.free_loops + loops)


def braid_closure(word: Sequence[int], strands: int) -> TangleDiagram:
    return closure(braid_tangle(word, strands))


def stack(lower: TangleDiagram, upper: TangleDiagram) -> TangleDiagram:
    """``lower`` followed by ``upper``: lower's top glued to upper's bottom."""
    if len(lower.top) != len(upper.bottom):
        raise DiagramError("boundary mismatch when stacking")
    lo = {a: ("L", a) for a in lower.arcs}
    hi = {a: ("U", a) for a in upper.arcs}
    uf = _UnionFind(list(lo.values()) + list(hi.values()))
    for a, b in zip(lower.top, upper.bottom):
        uf.union(lo[a], hi[b])

    def name(x):
        return uf.find(x)

    crossings = tuple(Crossing(tuple(name(lo[a]) for a in x.arcs), x.sign) for x in lower.crossings) + tuple(
        Crossing(tuple(name(hi[a]) for a in x.arcs), x.sign) for x in upper.crossings
    )
    bottom = tuple(name(lo[a]) for a in lower.bottom)
    top = tuple(name(hi[a]) for a in upper.top)
    # arcs that became closed components through the gluing
    used = {a for x in crossings for a in x.arcs} | set(bottom) | set(top)
    glued = {name(lo[a]) for a in lower.top}
    loops = len(glued - used)
    return TangleDiagram(crossings, bottom, top, lower.free_loops + upper.free_loops + loops)


def insert_kink(t: TangleDiagram, arc: Arc, positive: bool = True) -> TangleDiagram:
    """Add a Reidemeister-I curl on ``arc``."""
    if arc not in t.arcs:
        raise DiagramError(f"unknown arc {arc!r}")
    new_end = ("kink-end", arc, len(t.crossings))
    loop = ("kink-loop", arc, len(t.crossings))
    replaced = False
    crossings = []
    for x in t.crossings:
        arcs = list(x.arcs)
        if not replaced and arc in arcs:
            # keep the first endpoint, rename the second occurrence
            first = arcs.index(arc)
            if arc in arcs[first + 1 :]:
                arcs[arcs.index(arc, first + 1)] = new_end
                replaced = True
            else:
                arcs[first] = new_end
                replaced = True
        crossings.append(Crossing(tuple(arcs), x.sign))
    bottom, top = list(t.bottom), list(t.top)
    if not replaced:
        if arc in top:
            top[top.index(arc)] = new_end
        else:
            bottom[bottom.index(arc)] = new_end
    curl = (arc, new_end, loop, loop) if positive else (arc, loop, loop, new_end)
    crossings.append(Crossing(curl))
    return TangleDiagram(tuple(crossings), tuple(bottom), tuple(top), t.free_loops)


def random_braid_word(rng: random.Random, strands: int, length: int) -> list[int]:
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def r2_pair(rng: random.Random, strands: int, max_base: int = 6) -> tuple[list[int], list[int]]:
    """A braid word and the same word with a cancelling pair inserted."""
    word = random_braid_word(rng, strands, rng.randint(0, max_base))
    pos = rng.randint(0, len(word))
    g = rng.randint(1, strands - 1) * rng.choice((1, -1))
    return word, word[:pos] + [g, -g] + word[pos:]


def r3_pair(rng: random.Random, strands: int, max_extra: int = 5) -> tuple[list[int], list[int]]:
    """Two braid words differing by one braid-relation (Reidemeister III) move."""
    if strands < 3:
        raise ValueError("R3 needs at least three strands")
    i = rng.randint(1, strands - 2)
    s = rng.choice((1, -1))
    left = [s * i, s * (i + 1), s * i]
    right = [s * (i + 1), s * i, s * (i + 1)]
    extra = rng.randint(0, max_extra)
    pre = random_braid_word(rng, strands, rng.randint(0, extra))
    post = random_braid_word(rng, strands, extra - len(pre))
    return pre + left + post, pre + right + post


# ---------------------------------------------------------------- text format


def parse_diagram(text: str) -> TangleDiagram:
    """Parse the line format ``X a b c d [+|-]``, ``B bottom: ... top: ...``, ``L k``."""
    crossings = []
    bottom: tuple[str, ...] = ()
    top: tuple[str, ...] = ()
    loops = 0
    seen_boundary = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "X":
            if len(tok) not in (5, 6):
                raise DiagramError(f"line {lineno}: expected 'X a b c d [+|-]'")
            sign = tok[5] if len(tok) == 6 else "+"
            crossings.append(Crossing(tuple(tok[1:5]), sign))
        elif tok[0] == "B":
            if seen_boundary:
                raise DiagramError(f"line {lineno}: duplicate boundary declaration")
            seen_boundary = True
            rest = line[1:].strip()
            if "bottom:" not in rest or "top:" not in rest:
                raise DiagramError(f"line {lineno}: expected 'B bottom: ... top: ...'")
            b_part, t_part = rest.split("top:", 1)
            bottom = tuple(b_part.replace("bottom:", "").split())
            top = tuple(t_part.split())
        elif tok[0] == "L":
            if len(tok) != 2 or not tok[1].isdigit():
                raise DiagramError(f"line {lineno}: expected 'L <count>'")
            loops += int(tok[1])
        else:
            raise DiagramError(f"line {lineno}: unknown record {tok[0]!r}")
    return TangleDiagram(tuple(crossings), bottom, top, loops)


def parse_defect(text: str, character: int = -1) -> DefectMarking:
    """Parse ``I <arc> <+|->`` lines into a DefectMarking."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] != "I" or len(tok) != 3 or tok[2] not in ("+", "-"):
            raise DefectError(f"line {lineno}: expected 'I <arc> <+|->'")
        out.append((tok[1], 1 if tok[2] == "+" else -1))
    return DefectMarking(tuple(out), character)


def format_diagram(t: TangleDiagram) -> str:
    lines = [f"X {' '.join(map(str, x.arcs))} {x.sign}" for x in t.crossings]
    if not t.is_closed():
        lines.append(f"B bottom: {' '.join(map(str, t.bottom))} top: {' '.join(map(str, t.top))}")
    if t.free_loops:
        lines.append(f"L {t.free_loops}")
    return "\n".join(lines) + "\n"
