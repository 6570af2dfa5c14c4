import json

import pytest
from hypothesis import given, strategies as st

from zcolor.braid import (
    BraidWord,
    Diagram,
    band_crossing,
    cable,
    close_braid,
    component_of_left_end,
    components,
    format_braid,
    full_twist,
    parse_braid,
    signed_under_passes,
    torus_braid,
    writhe,
)
from zcolor.errors import (
    CrossingFreeComponent,
    GeneratorOutOfRange,
    MalformedWord,
    NonPositiveStrands,
)


@st.composite
def words(draw, max_strands=5, max_len=12):
    b = draw(st.integers(2, max_strands))
    gens = st.integers(1, b - 1).flatmap(lambda g: st.sampled_from([g, -g]))
    return BraidWord(b, tuple(draw(st.lists(gens, max_size=max_len))))


def test_parse_simple():
    w = parse_braid("2: 1 1")
    assert w.strands == 2 and w.letters == (1, 1)


def test_parse_group_expansion():
    assert parse_braid("3: (1 2)^2").letters == (1, 2, 1, 2)
    assert parse_braid("3: (1 (2)^2)^2").letters == (1, 2, 2, 1, 2, 2)


def test_parse_negative_exponent_reverses_and_negates():
    assert parse_braid("3: (1 2)^-1").letters == (-2, -1)


@pytest.mark.parametrize("text, err", [
    ("2: 3", GeneratorOutOfRange),
    ("2: 0", MalformedWord),
    ("0: ", NonPositiveStrands),
    ("1 1 1", MalformedWord),
    ("3: (1 2", MalformedWord),
    ("3: 1 2)^2", MalformedWord),
    ("3: 1 x", MalformedWord),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_braid(text)


def test_torus_braid_examples():
    assert format_braid(torus_braid(2, 2)) == "2: 1 1"
    assert torus_braid(6, 3).letters == (1, 2) * 6
    assert torus_braid(3, 2) == parse_braid("2: 1 1 1")


def test_negative_torus_braid_is_group_power():
    assert torus_braid(-2, 3) == torus_braid(2, 3).inverse()
    assert torus_braid(-1, 4).letters == (-3, -2, -1)


def test_close_hopf():
    d = close_braid(torus_braid(2, 2))
    assert (d.n_arcs, len(d.crossings), len(components(d))) == (2, 2, 2)


def test_close_trefoil():
    d = close_braid(torus_braid(3, 2))
    assert (d.n_arcs, len(d.crossings), len(components(d))) == (3, 3, 1)


def test_close_without_crossings_fails():
    with pytest.raises(CrossingFreeComponent):
        close_braid(parse_braid("2:"))
    with pytest.raises(CrossingFreeComponent):
        close_braid(parse_braid("3: 1 1"))


def test_writhe_and_components():
    assert writhe(close_braid(torus_braid(3, 2))) == 3
    assert writhe(close_braid(parse_braid("3: 1 -2 1 -2"))) == 0
    assert len(components(close_braid(torus_braid(6, 3)))) == 3


def test_cable_examples():
    w = torus_braid(3, 2)
    assert cable(w, 1).cabled == w
    c = cable(w, 2).cabled
    assert c.strands == 4 and len(c) == 12


def test_band_crossing_and_twist_shapes():
    assert band_crossing(1, 2, 1) == (2, 3, 1, 2)
    assert full_twist(2) == (1, 1)
    assert full_twist(3, 2, -1) == (-3, -4, -3, -4, -3, -4)


def test_hand_traced_crossings():
    # 3: 1 -2 : arcs are split at each under-pass
    d = close_braid(parse_braid("3: 1 -2"))
    assert d.n_arcs == 2
    x0, x1 = d.crossings
    assert x0.sign == 1 and x1.sign == -1
    assert x0.over != x0.under_in


def test_signed_under_passes_trefoil():
    w = parse_braid("2: 1 1 1")
    assert signed_under_passes(w, 0, 0) == 0
    # strand from position 0 goes under once (the second letter) before reaching 1
    assert signed_under_passes(w, 0, 1) in (1, 2)
    assert signed_under_passes(w, 0, 1) + signed_under_passes(w, 1, 0) == 3


def test_signed_under_passes_other_component():
    with pytest.raises(ValueError):
        signed_under_passes(torus_braid(2, 2), 0, 1)


def test_diagram_json_round_trip():
    d = close_braid(parse_braid("3: 1 -2 1 -2"))
    data = json.loads(json.dumps(d.to_dict()))
    assert Diagram.from_dict(data) == d
    data["arcs"] += 1
    with pytest.raises(MalformedWord):
        Diagram.from_dict(data)


@given(words())
def test_format_parse_round_trip(w):
    assert parse_braid(format_braid(w)) == w


@given(words())
def test_inverse_cancels_permutation(w):
    assert (w * w.inverse()).permutation() == tuple(range(w.strands))
    assert w.inverse().inverse() == w
    assert w.mirror().exponent_sum == -w.exponent_sum


@given(words())
def test_arcs_equal_crossings(w):
    try:
        d = close_braid(w)
    except CrossingFreeComponent:
        return
    assert d.n_arcs == len(d.crossings) == len(w)
    assert writhe(d) == w.exponent_sum
    assert sorted(a for comp in d.component_arcs for a in comp) == list(range(d.n_arcs))
    assert len(d.component_arcs) == len(set(component_of_left_end(w)))
    size = {a: len(comp) for comp in d.component_arcs for a in comp}
    for x in d.crossings:
        assert (x.under_in == x.under_out) == (size[x.under_in] == 1)


@given(words(max_strands=3, max_len=6), st.integers(1, 3))
def test_cable_sizes(w, n):
    c = cable(w, n).cabled
    assert c.strands == w.strands * n
    assert len(c) == len(w) * n * n
    assert c.exponent_sum == w.exponent_sum * n * n
