"""Torus links T(pr, qr): standard diagrams, the classification of their
Z-colorings, four-color seeds, constructive seeds, and the n-parallel
image predictor.

Left-end seeds of B(pr, qr) are grouped into q families of r consecutive
positions (family i = positions (i-1)r+1 .. ir from the top).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from .braid import BraidWord, Diagram, band_crossing, close_braid, full_twist, torus_braid
from .errors import (
    BudgetExceeded,
    ComponentCountNotOne,
    InvalidParams,
    OddR,
    UnsupportedParity,
)
from .racks import RackOps, kink_inverse, kink_map, rack_propagate, znr_tau_power

Vector = tuple[int, ...]


@dataclass(frozen=True)
class TorusParams:
    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if p == 0 or q < 1 or r < 2:
            raise InvalidParams(f"need p != 0, q >= 1, r >= 2; got ({p}, {q}, {r})")
        if gcd(p, q) != 1:
            raise InvalidParams(f"p = {p} and q = {q} are not coprime")
        if abs(p) < q:
            raise InvalidParams(f"need |p| >= q; got p = {p}, q = {q}")

    @classmethod
    def parse(cls, text: str) -> "TorusParams":
        try:
            p, q, r = (int(x) for x in text.split(","))
        except ValueError:
            raise InvalidParams(f"expected p,q,r; got {text!r}") from None
        return cls(p, q, r)

    @property
    def hypothesis(self) -> bool:
        """pr or qr even."""
        return (self.p * self.r) % 2 == 0 or (self.q * self.r) % 2 == 0

    @property
    def crossings(self) -> int:
        return abs(self.p) * self.r * (self.q * self.r - 1)

    def __str__(self):
        return f"({self.p},{self.q},{self.r})"


def standard_word(t: TorusParams) -> BraidWord:
    return torus_braid(t.p * t.r, t.q * t.r)


def standard_diagram(t: TorusParams) -> Diagram:
    return close_braid(standard_word(t))


def delta(a: Sequence[int]) -> int:
    """Alternating sum a_1 - a_2 + a_3 - ..."""
    return sum(x if i % 2 == 0 else -x for i, x in enumerate(a))


def tau_transform(a: Sequence[int]) -> Vector:
    d = delta(a)
    return tuple(2 * d - x for x in a)


def families(seed: Sequence[int], r: int) -> list[Vector]:
    return [tuple(seed[k:k + r]) for k in range(0, len(seed), r)]


def one_twist(a: Sequence[int]) -> Vector:
    """The top strand passes over all the others and drops to the bottom."""
    return tuple(2 * a[0] - x for x in a[1:]) + (a[0],)


def _unit(r: int, i: int) -> Vector:
    return tuple(int(j == i) for j in range(r))


@dataclass(frozen=True)
class ClassificationSet:
    """The seeds (a_1, ..., a_q) in (Z^r)^q that color the standard diagram."""
    params: TorusParams
    case: str  # r-even | r-odd-p-even | r-odd-q-even | r-odd-pq-odd

    @property
    def r(self) -> int:
        return self.params.r

    @property
    def q(self) -> int:
        return self.params.q

    def _from_block(self, a: Sequence[int]) -> Vector:
        a = tuple(a)
        if self.case == "r-odd-q-even":
            ta = tau_transform(a)
            return tuple(v for i in range(self.q) for v in (a if i % 2 == 0 else ta))
        return a * self.q

    def generators(self) -> list[Vector]:
        r = self.r
        if self.case == "r-even":
            blocks = [tuple(int(j in (i, i + 1)) for j in range(r)) for i in range(r - 1)]
        elif self.case == "r-odd-pq-odd":
            blocks = [(1,) * r]
        else:
            blocks = [_unit(r, i) for i in range(r)]
        return [self._from_block(b) for b in blocks]

    @property
    def rank(self) -> int:
        return len(self.generators())

    def describe(self) -> str:
        return {
            "r-even": "{(a,...,a) : a in Z^r, delta(a) = 0}",
            "r-odd-p-even": "{(a,...,a) : a in Z^r}",
            "r-odd-q-even": "{(a, tau(a), a, ..., tau(a)) : a in Z^r}",
            "r-odd-pq-odd": "{(c,...,c) : c in Z} (constants only)",
        }[self.case]

    def __contains__(self, seed: Sequence[int]) -> bool:
        seed = tuple(seed)
        if len(seed) != self.q * self.r:
            return False
        a = seed[:self.r]
        if self.case == "r-even" and delta(a) != 0:
            return False
        if self.case == "r-odd-pq-odd" and len(set(a)) > 1:
            return False
        return self._from_block(a) == seed

    def enumerate(self, lo: int = -3, hi: int = 6, budget: int = 10 ** 6) -> Iterator[Vector]:
        """Members whose first family lies in [lo, hi]^r."""
        if (hi - lo + 1) ** self.r > budget:
            raise BudgetExceeded(f"box [{lo},{hi}]^{self.r} exceeds budget {budget}")
        for a in itertools.product(range(lo, hi + 1), repeat=self.r):
            s = self._from_block(a)
            if s in self:
                yield s


def classification_A(t: TorusParams) -> ClassificationSet:
    if t.r % 2 == 0:
        case = "r-even"
    elif t.p % 2 == 0:
        case = "r-odd-p-even"
    elif t.q % 2 == 0:
        case = "r-odd-q-even"
    else:
        case = "r-odd-pq-odd"
    return ClassificationSet(t, case)


@dataclass(frozen=True)
class FourColorSet:
    r: int
    members: tuple[Vector, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, a) -> bool:
        return tuple(a) in self.members

    def repeated(self, q: int) -> set[Vector]:
        return {a * q for a in self.members}


def classification_A4(r: int) -> FourColorSet:
    if r % 2 or r < 2:
        raise OddR(f"four-color seeds exist only for even r >= 2; got {r}")
    half = r // 2

    def from_pairs(first, last, values, paired_from):
        # paired_from = 0: pairs (a1,a2),(a3,a4),...; 1: a1, (a2,a3), ..., a_r
        out = set()
        if paired_from == 0:
            for bits in itertools.product(values, repeat=half):
                out.add(tuple(v for b in bits for v in (b, b)))
        else:
            for bits in itertools.product(values, repeat=half - 1):
                out.add((first,) + tuple(v for b in bits for v in (b, b)) + (last,))
        return out

    a01 = from_pairs(1, 1, (0, 1), 1)
    a12 = from_pairs(None, None, (1, 2), 0)
    a23 = from_pairs(2, 2, (2, 3), 1)
    members = (a01 | a12 | a23) - {(1,) * r, (2,) * r}
    return FourColorSet(r, tuple(sorted(members)))


@dataclass(frozen=True)
class FamilyTuple:
    blocks: tuple[Vector, ...]
    degenerate_r2: bool = False

    @property
    def seed(self) -> Vector:
        return tuple(v for b in self.blocks for v in b)


def seed_coloring(t: TorusParams) -> FamilyTuple:
    """The constructive left-end seed giving four (r even) or five (r odd) colors."""
    r, q = t.r, t.q
    ends = (1,) + (0,) * (r - 2) + (1,)
    if r % 2 == 0 or t.p % 2 == 0:
        blocks = (ends,) * q
    elif q % 2 == 0:
        down = (2,) + (1,) * (r - 2) + (0,)
        up = (0,) + (1,) * (r - 2) + (2,)
        blocks = tuple(down if i % 2 == 0 else up for i in range(q))
    else:
        raise UnsupportedParity(f"r, p, q all odd for {t}: T(pr,qr) is not Z-colorable")
    return FamilyTuple(blocks, degenerate_r2=(r == 2))


def torus_cable_word(p: int, q: int, r: int) -> BraidWord:
    """B(pr, qr) written as the r-cable of B(p, q) with one band full twist per
    step: each step moves the top band over the rest to the bottom and twists it.
    Negative p gives the inverse word."""
    step: list[int] = []
    for i in range(1, q):
        step.extend(band_crossing(i, r, 1))
    step.extend(full_twist(r, (q - 1) * r, 1))
    w = BraidWord(q * r, tuple(step) * abs(p))
    return w if p > 0 else w.inverse()


def core_propagate(R: RackOps, p: int, q: int, left: Sequence) -> tuple:
    """Rack propagation through the framed core tangle of T(pr, qr): |p| steps,
    each the q-strand twist followed by a kink on the strand reaching the bottom
    (for p < 0, the inverse steps)."""
    vals = tuple(left)
    if p > 0:
        twist, kink = torus_braid(1, q), kink_map(R)
        for _ in range(p):
            vals = rack_propagate(R, twist, vals)
            vals = vals[:-1] + (kink(vals[-1]),)
    else:
        twist, unkink = torus_braid(-1, q), kink_inverse(R)
        for _ in range(-p):
            vals = vals[:-1] + (unkink(vals[-1]),)
            vals = rack_propagate(R, twist, vals)
    return vals


# n-parallels ------------------------------------------------------------------

@dataclass(frozen=True)
class PredictedImage:
    n: int
    writhe: int
    case: str  # n-even | n-odd-w-odd | n-odd-w-even
    generators: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def __contains__(self, a) -> bool:
        a = tuple(a)
        if self.case == "n-even":
            return self.writhe * delta(a) == 0
        if self.case == "n-odd-w-odd":
            return len(set(a)) == 1
        return True


def predicted_parallel_image(d: Diagram | BraidWord, n: int) -> PredictedImage:
    """Image of the restriction of Col_Z(D^(n)) to the n parallels of one arc."""
    if isinstance(d, BraidWord):
        d = close_braid(d)
    if len(d.component_arcs) != 1:
        raise ComponentCountNotOne(f"diagram has {len(d.component_arcs)} components")
    w = sum(c.sign for c in d.crossings)
    full = tuple(_unit(n, i) for i in range(n))
    if n % 2 == 0:
        gens = full if w == 0 else tuple(
            tuple(int(j in (i, i + 1)) for j in range(n)) for i in range(n - 1))
        return PredictedImage(n, w, "n-even", gens)
    if w % 2:
        return PredictedImage(n, w, "n-odd-w-odd", ((1,) * n,))
    return PredictedImage(n, w, "n-odd-w-even", full)


def transport(a: Sequence[int], under_pass_parity: int) -> Vector:
    """Parallel colors after passing under an even (0) or odd (1) number of arcs; n odd."""
    if len(a) % 2 == 0:
        raise ValueError("the parity rule applies to an odd number of parallels")
    if under_pass_parity % 2 == 0:
        return tuple(a)
    return tau_transform(a)


def transport_signed(a: Sequence[int], signed_under_passes: int) -> Vector:
    """General rule: the kink map applied once per signed under-pass."""
    return znr_tau_power(a, signed_under_passes)
