"""Braid words, torus braids, closed-braid diagrams and n-parallels.

Strand positions are numbered from the top, starting at 1 in braid words and
at 0 in every Python-side tuple.  A letter ``+i`` is the generator sigma_i: the
strands at positions ``i`` and ``i+1`` swap, and the strand moving down (from
``i`` to ``i+1``) passes OVER.  For ``-i`` the strand moving down passes under.
The exponent sum of a word is therefore the writhe of its closure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    CrossingFreeComponent,
    GeneratorOutOfRange,
    MalformedWord,
    NonPositiveStrands,
)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise NonPositiveStrands(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        for g in self.letters:
            if g == 0:
                raise MalformedWord("generator 0 is not a letter")
            if abs(g) >= self.strands:
                raise GeneratorOutOfRange(
                    f"|{g}| must be below the strand count {self.strands}")

    def __len__(self):
        return len(self.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise MalformedWord("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k >= 0:
            return BraidWord(self.strands, self.letters * k)
        return self.inverse() ** (-k)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in self.letters))

    def permutation(self) -> tuple[int, ...]:
        """perm[i] = right-end position reached by the strand leaving left position i."""
        at = list(range(self.strands))      # at[pos] = strand currently at pos
        for g in self.letters:
            i = abs(g) - 1
            at[i], at[i + 1] = at[i + 1], at[i]
        perm = [0] * self.strands
        for pos, strand in enumerate(at):
            perm[strand] = pos
        return tuple(perm)

    def __str__(self):
        return format_braid(self)


_TOKEN = re.compile(r"\s*(?:(\()|(\)\s*\^\s*([+-]?\d+))|([+-]?\d+)|(\S))")


def parse_braid(text: str) -> BraidWord:
    """Parse ``"<b>: <letters>"``; ``(w)^k`` groups expand in place.

    >>> parse_braid("3: (1 2)^2").letters
    (1, 2, 1, 2)
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise MalformedWord(f"missing ':' in braid word {text!r}")
    head = head.strip()
    if not re.fullmatch(r"[+-]?\d+", head):
        raise MalformedWord(f"bad strand count {head!r}")
    strands = int(head)
    if strands < 1:
        raise NonPositiveStrands(f"strand count must be positive, got {strands}")

    stack: list[list[int]] = [[]]
    pos = 0
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if m is None or m.end() == pos:
            if body[pos:].strip() == "":
                break
            raise MalformedWord(f"unexpected input at {body[pos:]!r}")
        pos = m.end()
        opening, closing, exponent, number, junk = m.groups()
        if junk is not None:
            raise MalformedWord(f"unexpected character {junk!r} in {text!r}")
        if opening:
            stack.append([])
        elif closing:
            if len(stack) == 1:
                raise MalformedWord(f"unbalanced ')' in {text!r}")
            group = stack.pop()
            k = int(exponent)
            if k < 0:
                group = [-g for g in reversed(group)]
                k = -k
            stack[-1].extend(group * k)
        elif number is not None:
            g = int(number)
            if g == 0:
                raise MalformedWord("generator 0 is not a letter")
            stack[-1].append(g)
    if len(stack) != 1:
        raise MalformedWord(f"unclosed '(' in {text!r}")
    return BraidWord(strands, tuple(stack[0]))


def format_braid(w: BraidWord) -> str:
    if not w.letters:
        return f"{w.strands}:"
    return f"{w.strands}: " + " ".join(str(g) for g in w.letters)


def torus_braid(a: int, b: int) -> BraidWord:
    """(sigma_1 ... sigma_{b-1})^a on b strands as a group power.

    Negative a gives the inverse word, whose closure is the mirror link.
    """
    if b < 1:
        raise NonPositiveStrands(f"strand count must be positive, got {b}")
    twist = tuple(range(1, b)) if a >= 0 else tuple(-i for i in range(b - 1, 0, -1))
    return BraidWord(b, twist * abs(a))


def band_crossing(i: int, n: int, sign: int = 1) -> tuple[int, ...]:
    """Letters in which the n-band at band position i crosses band i+1.

    Band strands of band i go down one at a time, bottom strand first, each
    across the whole of band i+1.  Every crossing carries ``sign``.
    """
    s = (i - 1) * n
    out = []
    for k in range(n, 0, -1):
        out.extend(sign * g for g in range(s + k, s + k + n))
    return tuple(out)


def full_twist(n: int, offset: int = 0, sign: int = 1) -> tuple[int, ...]:
    """Delta^2 on the n strands starting after position ``offset``."""
    return tuple(sign * (offset + g) for _ in range(n) for g in range(1, n))


@dataclass(frozen=True)
class CablePlan:
    n: int
    source: BraidWord
    cabled: BraidWord


def cable(w: BraidWord, n: int) -> CablePlan:
    """Blackboard n-parallel at the braid level: each letter becomes an n^2 band block."""
    if n < 1:
        raise ValueError(f"cable multiplicity must be positive, got {n}")
    letters: list[int] = []
    for g in w.letters:
        letters.extend(band_crossing(abs(g), n, 1 if g > 0 else -1))
    return CablePlan(n, w, BraidWord(w.strands * n, tuple(letters)))


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class Diagram:
    """A closed-braid diagram.

    ``strand_trace[k]`` lists, for component k, the trace of that component as
    ``(arc, letter_index)`` pairs: the arc is entered and then ends by passing
    under the crossing at ``letter_index``.
    """
    word: BraidWord
    n_arcs: int
    crossings: tuple[Crossing, ...]
    left_ends: tuple[int, ...]
    right_ends: tuple[int, ...]
    component_arcs: tuple[tuple[int, ...], ...]
    strand_trace: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, default=())

    @property
    def strands(self) -> int:
        return self.word.strands

    @property
    def arcs(self) -> range:
        return range(self.n_arcs)

    def to_dict(self) -> dict:
        return {
            "strands": self.word.strands,
            "word": list(self.word.letters),
            "arcs": self.n_arcs,
            "crossings": [
                {"over": c.over, "under_in": c.under_in, "under_out": c.under_out, "sign": c.sign}
                for c in self.crossings
            ],
            "components": [list(arcs) for arcs in self.component_arcs],
            "left_ends": list(self.left_ends),
            "right_ends": list(self.right_ends),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Diagram":
        d = close_braid(BraidWord(data["strands"], tuple(data["word"])))
        if d.to_dict() != data:
            raise MalformedWord("diagram record is inconsistent with its braid word")
        return d


def _strand_paths(w: BraidWord):
    """Per left position, the letter indices at which that strand passes under."""
    at = list(range(w.strands))
    unders: list[list[int]] = [[] for _ in range(w.strands)]
    for k, g in enumerate(w.letters):
        i = abs(g) - 1
        top, bottom = at[i], at[i + 1]
        # positive: the strand moving down (top) is over, the one moving up is under
        unders[bottom if g > 0 else top].append(k)
        at[i], at[i + 1] = bottom, top
    return unders


def close_braid(w: BraidWord) -> Diagram:
    """Closure of ``w`` with right end i glued to left end i.

    Arcs are numbered in trace order: components are taken by smallest unvisited
    left position, each traced from that left end, and a new arc starts after
    every under-pass.
    """
    perm = w.permutation()
    unders = _strand_paths(w)

    visited = [False] * w.strands
    arc_at_left: dict[int, int] = {}
    under_in_arc: dict[int, int] = {}      # letter index -> arc ending there
    under_out_arc: dict[int, int] = {}
    components: list[list[int]] = []
    traces = []
    n_arcs = 0
    for start in range(w.strands):
        if visited[start]:
            continue
        cycle = []
        pos = start
        while not visited[pos]:
            visited[pos] = True
            cycle.append(pos)
            pos = perm[pos]
        if not any(unders[p] for p in cycle):
            raise CrossingFreeComponent(
                f"strands {[p + 1 for p in cycle]} close up without passing under")
        # Rotate so the trace starts at `start`; the first arc covers it, and the
        # tail of the last strand piece wraps around into that same arc.
        first_arc = n_arcs
        current = first_arc
        n_arcs += 1
        comp = [current]
        trace = []
        for idx, p in enumerate(cycle):
            arc_at_left[p] = current
            for k in unders[p]:
                under_in_arc[k] = current
                trace.append((current, k))
                nxt = n_arcs
                n_arcs += 1
                under_out_arc[k] = nxt
                current = nxt
                comp.append(current)
        # The arc after the final under-pass continues to the start: merge it.
        last = comp.pop()
        n_arcs -= 1
        _relabel(last, first_arc, arc_at_left, under_in_arc, under_out_arc, trace)
        components.append(comp)
        traces.append(tuple(trace))

    crossings = []
    arc_now = [arc_at_left[p] for p in range(w.strands)]
    for k, g in enumerate(w.letters):
        i = abs(g) - 1
        over_pos = i if g > 0 else i + 1
        crossings.append(Crossing(arc_now[over_pos], under_in_arc[k], under_out_arc[k],
                                  1 if g > 0 else -1))
        under_pos = i + 1 if g > 0 else i
        assert arc_now[under_pos] == under_in_arc[k]
        arc_now[under_pos] = under_out_arc[k]
        arc_now[i], arc_now[i + 1] = arc_now[i + 1], arc_now[i]
    left = tuple(arc_at_left[p] for p in range(w.strands))
    right = tuple(arc_now)
    assert right == left, "closure identification failed"
    return Diagram(w, n_arcs, tuple(crossings), left, right,
                   tuple(tuple(c) for c in components), tuple(traces))


def _relabel(old, new, *maps):
    for m in maps:
        if isinstance(m, dict):
            for key, val in m.items():
                if val == old:
                    m[key] = new
        else:
            for idx, (arc, k) in enumerate(m):
                if arc == old:
                    m[idx] = (new, k)


def writhe(d: Diagram) -> int:
    return sum(c.sign for c in d.crossings)


def components(d: Diagram) -> tuple[tuple[int, ...], ...]:
    return d.component_arcs


def component_of_left_end(w: BraidWord) -> list[int]:
    """Component index for each left position (components ordered as in close_braid)."""
    perm = w.permutation()
    comp = [-1] * w.strands
    c = 0
    for start in range(w.strands):
        if comp[start] >= 0:
            continue
        pos = start
        while comp[pos] < 0:
            comp[pos] = c
            pos = perm[pos]
        c += 1
    return comp


def signed_under_passes(w: BraidWord, start: int, stop: int) -> int:
    """Signed under-pass count tracing the strand from left position ``start``
    forward until it first reaches left position ``stop``.

    Raises ValueError if the two positions lie on different components.
    """
    perm = w.permutation()
    signs = [[] for _ in range(w.strands)]
    at = list(range(w.strands))
    for g in w.letters:
        i = abs(g) - 1
        top, bottom = at[i], at[i + 1]
        signs[bottom if g > 0 else top].append(1 if g > 0 else -1)
        at[i], at[i + 1] = bottom, top
    total = 0
    pos = start
    for _ in range(w.strands):
        if pos == stop:
            return total
        total += sum(signs[pos])
        pos = perm[pos]
    if pos == stop:
        return total
    raise ValueError(f"left positions {start} and {stop} are on different components")


def concat(words: Iterable[BraidWord]) -> BraidWord:
    words = list(words)
    out = words[0]
    for w in words[1:]:
        out = out * w
    return out
