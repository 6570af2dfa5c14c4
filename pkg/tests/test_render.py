import re

import pytest
from hypothesis import given, strategies as st

from zcolor.braid import close_braid, torus_braid
from zcolor.coloring import coloring_from_seed, coloring_lattice, palette
from zcolor.errors import InvalidColoring, IoFailure
from zcolor.render import render, svg_document

T44 = close_braid(torus_braid(4, 4))


def strokes(doc):
    return set(re.findall(r'stroke="(#[0-9a-f]{6})"', doc))


def test_four_strokes_for_four_colors():
    doc = svg_document(T44, coloring_from_seed(T44, (1, 0, 0, 1)))
    assert doc.startswith("<svg") and doc.rstrip().endswith("</svg>")
    assert len(strokes(doc)) == 4
    labels = re.findall(r">(-?\d+)</text>", doc)
    assert labels == ["1", "0", "0", "1"]


def test_trivial_coloring_single_stroke():
    assert len(strokes(svg_document(T44, coloring_from_seed(T44, (5, 5, 5, 5))))) == 1


def test_invalid_coloring_rejected_before_render(tmp_path):
    bad = list(coloring_from_seed(T44, (1, 0, 0, 1)).colors)
    bad[2] += 1
    path = tmp_path / "bad.svg"
    with pytest.raises(InvalidColoring):
        render(T44, bad, str(path))
    assert not path.exists()


def test_render_writes_file(tmp_path):
    c = coloring_from_seed(T44, (1, 0, 0, 1))
    path = tmp_path / "t44.svg"
    doc = render(T44, c, str(path))
    assert path.read_text() == doc == svg_document(T44, c)


def test_render_io_failure(tmp_path):
    c = coloring_from_seed(T44, (1, 0, 0, 1))
    with pytest.raises(IoFailure):
        render(T44, c, str(tmp_path / "missing" / "x.svg"))


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_stroke_count_matches_palette(coeffs):
    basis = coloring_lattice(T44).basis
    v = tuple(sum(k * b[i] for k, b in zip(coeffs, basis)) for i in range(T44.n_arcs))
    doc = svg_document(T44, v)
    assert len(strokes(doc)) == min(palette(v).size, 10)
    # one polyline per strand segment: n per letter plus one closing path per strand
    assert doc.count("<polyline") == len(T44.word) * (T44.strands + 1) + T44.strands
