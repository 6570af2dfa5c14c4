"""SVG drawing of a colored closed braid.

Strand positions are rows, braid letters are columns, and the closing strands
loop back over the top.  Each arc is stroked by the index of its color in the
sorted palette, so equal colors always share a stroke.
"""
from __future__ import annotations

from typing import Sequence

from .braid import Diagram
from .coloring import Coloring, palette, validate
from .errors import IoFailure

STROKES = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")

DX, DY, GAP, MARGIN = 40, 30, 12, 20


def _fmt(v: float) -> str:
    return f"{v:.1f}".rstrip("0").rstrip(".")


def _line(points: Sequence[tuple[float, float]], stroke: str) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="3"/>'


def svg_document(d: Diagram, c: Coloring | Sequence[int]) -> str:
    """The SVG text for ``d`` colored by ``c``; raises if ``c`` is not a coloring."""
    c = c if isinstance(c, Coloring) else Coloring(tuple(c))
    validate(d, c)
    index = {v: k for k, v in enumerate(palette(c).colors)}

    def stroke(arc: int) -> str:
        return STROKES[index[c[arc]] % len(STROKES)]

    n, letters = d.word.strands, d.word.letters
    top = MARGIN + GAP * n + DY
    left = MARGIN + GAP * n + 20
    right = left + DX * max(len(letters), 1)
    width = right + GAP * n + MARGIN
    height = top + DY * (n - 1) + MARGIN

    def y(i):
        return top + DY * i

    body = []
    arcs = [d.left_ends[i] for i in range(n)]
    for k, g in enumerate(letters):
        x0, x1 = left + DX * k, left + DX * (k + 1)
        i = abs(g) - 1
        x = d.crossings[k]
        for j in range(n):
            if j not in (i, i + 1):
                body.append(_line([(x0, y(j)), (x1, y(j))], stroke(arcs[j])))
        over_from, under_from = (i, i + 1) if g > 0 else (i + 1, i)
        body.append(_line([(x0, y(over_from)), (x1, y(under_from))], stroke(x.over)))
        ya, yb = y(under_from), y(over_from)
        cut = 0.38
        body.append(_line([(x0, ya), (x0 + (x1 - x0) * cut, ya + (yb - ya) * cut)],
                          stroke(x.under_in)))
        body.append(_line([(x1 - (x1 - x0) * cut, yb - (yb - ya) * cut), (x1, yb)],
                          stroke(x.under_out)))
        arcs[under_from], arcs[over_from] = x.over, x.under_out
    for j in range(n):
        off = GAP * (j + 1)
        body.append(_line([(right, y(j)), (right + off, y(j)), (right + off, top - DY - off + GAP),
                           (left - off, top - DY - off + GAP), (left - off, y(j)), (left, y(j))],
                          stroke(d.right_ends[j])))
    for j in range(n):
        body.append(f'<text x="{_fmt(left + 3)}" y="{_fmt(y(j) - 5)}" font-size="11" '
                    f'font-family="monospace">{c[d.left_ends[j]]}</text>')
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def render(d: Diagram, c: Coloring | Sequence[int], path: str) -> str:
    """Write the SVG for ``d`` and ``c`` to ``path`` and return the document."""
    doc = svg_document(d, c)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(doc)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return doc
