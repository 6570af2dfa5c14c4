"""Z-colorings of closed-braid diagrams.

A Z-coloring assigns an integer to every arc so that ``2*over = under_in +
under_out`` at each crossing.  On a closed braid the colors of the left ends
determine everything, so most searches run over seed tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .braid import BraidWord, Diagram
from .errors import (
    BudgetExceeded,
    ClosureMismatch,
    InvalidColoring,
    LengthMismatch,
    NotColorable,
)
from .linalg import IntMatrix, kernel_basis, minor_abs_det


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    seed: tuple[int, ...] | None = field(default=None, compare=False)

    def __getitem__(self, arc: int) -> int:
        return self.colors[arc]

    def __len__(self):
        return len(self.colors)

    def affine(self, alpha: int, beta: int) -> "Coloring":
        seed = None if self.seed is None else tuple(alpha * x + beta for x in self.seed)
        return Coloring(tuple(alpha * x + beta for x in self.colors), seed)

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.colors))


@dataclass(frozen=True)
class Palette:
    colors: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class ColoringLattice:
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def palette(c: Coloring | Sequence[int]) -> Palette:
    colors = c.colors if isinstance(c, Coloring) else c
    return Palette(tuple(sorted(set(colors))))


def is_trivial(c: Coloring) -> bool:
    return palette(c).size <= 1


def coloring_matrix(d: Diagram) -> IntMatrix:
    rows = []
    for x in d.crossings:
        row = [0] * d.n_arcs
        row[x.over] += 2
        row[x.under_in] -= 1
        row[x.under_out] -= 1
        rows.append(row)
    return IntMatrix.from_rows(rows, d.n_arcs)


def violations(d: Diagram, c: Coloring | Sequence[int]) -> list[int]:
    """Indices of crossings where the crossing relation fails."""
    colors = c.colors if isinstance(c, Coloring) else tuple(c)
    if len(colors) != d.n_arcs:
        raise LengthMismatch(f"coloring has {len(colors)} entries for {d.n_arcs} arcs")
    return [k for k, x in enumerate(d.crossings)
            if 2 * colors[x.over] != colors[x.under_in] + colors[x.under_out]]


def validate(d: Diagram, c: Coloring | Sequence[int]) -> None:
    bad = violations(d, c)
    if bad:
        raise InvalidColoring(f"crossing relation fails at crossings {bad}")


def link_determinant(d: Diagram) -> int:
    """|first minor| of the coloring matrix.  Zero iff the lattice has rank >= 2."""
    return minor_abs_det(coloring_matrix(d), 0, 0)


def coloring_lattice(d: Diagram) -> ColoringLattice:
    return ColoringLattice(tuple(kernel_basis(coloring_matrix(d))))


def is_z_colorable(d: Diagram) -> bool:
    return coloring_lattice(d).rank >= 2


def propagate(w: BraidWord, left: Sequence[int]) -> tuple[int, ...]:
    """Push left-end colors through ``w``; each under strand becomes 2*over - under."""
    if len(left) != w.strands:
        raise LengthMismatch(f"{len(left)} colors for {w.strands} strands")
    vals = list(left)
    for g in w.letters:
        i = abs(g) - 1
        top, bot = vals[i], vals[i + 1]
        if g > 0:
            vals[i], vals[i + 1] = 2 * top - bot, top
        else:
            vals[i], vals[i + 1] = bot, 2 * bot - top
    return tuple(vals)


def propagate_history(w: BraidWord, left: Sequence[int]) -> list[tuple[int, ...]]:
    """All intermediate position tuples, left end first, right end last."""
    if len(left) != w.strands:
        raise LengthMismatch(f"{len(left)} colors for {w.strands} strands")
    out = [tuple(left)]
    for g in w.letters:
        out.append(propagate(BraidWord(w.strands, (g,)), out[-1]))
    return out


def coloring_from_seed(d: Diagram, left: Sequence[int]) -> Coloring:
    left = tuple(left)
    right = propagate(d.word, left)
    if right != left:
        raise ClosureMismatch(f"seed {left} propagates to {right}")
    colors: list[int | None] = [None] * d.n_arcs
    for arc, value in zip(d.left_ends, left):
        colors[arc] = value
    for x in d.crossings:
        colors[x.under_out] = 2 * colors[x.over] - colors[x.under_in]
    c = Coloring(tuple(colors), left)
    validate(d, c)
    return c


def seed_of(d: Diagram, c: Coloring | Sequence[int]) -> tuple[int, ...]:
    colors = c.colors if isinstance(c, Coloring) else c
    return tuple(colors[a] for a in d.left_ends)


def normalize(c: Coloring) -> Coloring:
    """Shift the minimum color to 0 and divide out the gcd of the colors."""
    lo = min(c.colors)
    shifted = c.affine(1, -lo)
    g = 0
    for x in shifted.colors:
        g = gcd(g, x)
    if g <= 1:
        return shifted
    seed = None if shifted.seed is None else tuple(x // g for x in shifted.seed)
    return Coloring(tuple(x // g for x in shifted.colors), seed)


def bounded_seeds(w: BraidWord, m: int) -> Iterator[tuple[int, ...]]:
    """Seeds in {0..m-1}^b that close up with every color staying in {0..m-1}.

    Depth-first over seed positions in lexicographic order.  Each prefix is
    propagated with unknown entries; a known color leaving the range, or a known
    right end disagreeing with its seed, prunes the branch.
    """
    b = w.strands
    steps = [(abs(g) - 1, g > 0) for g in w.letters]
    hi = m - 1

    def feasible(prefix: list[int]) -> bool:
        vals: list[int | None] = prefix + [None] * (b - len(prefix))
        for i, positive in steps:
            top, bot = vals[i], vals[i + 1]
            if positive:
                new = None if top is None or bot is None else 2 * top - bot
                if new is not None and not 0 <= new <= hi:
                    return False
                vals[i], vals[i + 1] = new, top
            else:
                new = None if top is None or bot is None else 2 * bot - top
                if new is not None and not 0 <= new <= hi:
                    return False
                vals[i], vals[i + 1] = bot, new
        return all(v is None or v == prefix[j]
                   for j, v in enumerate(vals[:len(prefix)]))

    prefix: list[int] = []

    def dfs() -> Iterator[tuple[int, ...]]:
        if len(prefix) == b:
            yield tuple(prefix)
            return
        for v in range(m):
            prefix.append(v)
            if feasible(prefix):
                yield from dfs()
            prefix.pop()

    yield from dfs()


def nontrivial_bounded_colorings(d: Diagram, m: int) -> list[Coloring]:
    out = []
    for seed in bounded_seeds(d.word, m):
        c = coloring_from_seed(d, seed)
        if not is_trivial(c):
            out.append(c)
    return out


def mincol_bounded(d: Diagram, m: int) -> Coloring | None:
    """Lexicographically least seed giving a nontrivial coloring inside {0..m-1}."""
    if m < 2:
        raise ValueError("color bound must be at least 2")
    for seed in bounded_seeds(d.word, m):
        c = coloring_from_seed(d, seed)
        if not is_trivial(c):
            return c
    return None


def mincol_search(d: Diagram, m_max: int) -> tuple[int, Coloring]:
    """Least palette size of a nontrivial coloring, scanning bounds m = 2..m_max.

    Stops at the first bound admitting a nontrivial coloring and returns the
    smallest palette found there (ties broken by the least seed).  Completeness
    for palettes of size four relies on every four-color coloring normalizing
    into {0, 1, 2, 3}.
    """
    if coloring_lattice(d).rank < 2:
        raise NotColorable("coloring lattice has rank < 2: only constant colorings exist")
    for m in range(2, m_max + 1):
        found = nontrivial_bounded_colorings(d, m)
        if found:
            best = min(found, key=lambda c: (palette(c).size, c.seed))
            return palette(best).size, best
    raise BudgetExceeded(f"no nontrivial coloring with colors in 0..{m_max - 1}")


def check_minmax_lemma(d: Diagram, c: Coloring) -> bool:
    """At a crossing whose over arc has the minimum (or maximum) color, both
    under arcs share one value."""
    validate(d, c)
    lo, hi = min(c.colors), max(c.colors)
    for x in d.crossings:
        if c[x.over] in (lo, hi) and c[x.under_in] != c[x.under_out]:
            return False
    return True


def crossing_type(over: int, a: int, b: int) -> str | None:
    """Classify a crossing of a {0,1,2,3}-coloring; None if it is none of the three types."""
    if over == a == b:
        return "trivial"
    if over == 1 and {a, b} == {0, 2}:
        return "over-1"
    if over == 2 and {a, b} == {1, 3}:
        return "over-2"
    return None


def crossing_types(d: Diagram, c: Coloring) -> list[str | None]:
    return [crossing_type(c[x.over], c[x.under_in], c[x.under_out]) for x in d.crossings]
