import itertools
import random

import pytest
from hypothesis import given, strategies as st

from zcolor.braid import cable, close_braid, component_of_left_end, parse_braid, torus_braid
from zcolor.coloring import coloring_from_seed, coloring_lattice, is_trivial, propagate, seed_of
from zcolor.errors import CarrierTooLarge, ComponentCountNotOne, RackSpecError
from zcolor.racks import (
    associated_quandle,
    band_to_tuple,
    cyclic_rack,
    dihedral,
    inner_orbits,
    is_cyclic_subrack,
    is_quandle,
    iterate,
    kink_inverse,
    kink_map,
    maximal_connected_subracks,
    parse_rack,
    product_coloring_bijection,
    rack_colorings_of_closure,
    rack_coloring_from_seed,
    rack_propagate,
    verify_maxlem,
    verify_rack_axioms,
    verify_tau_lemma,
    zn_closed_forms,
    znr,
    znr_quandle_op,
    znr_seed_lattice,
    znr_tau,
    znr_tau_power,
)

TREFOIL = parse_braid("2: 1 1 1")


def tuples(n, lo=-30, hi=30):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(tuple)


def test_parse_rack():
    assert parse_rack("cyclic:5").elements == tuple(range(5))
    assert parse_rack("znr:2:3").name == "znr:2:3"
    assert not parse_rack("dihedral:0").finite
    for bad in ("cyclic", "znr:x", "dihedral:3:2", "torus:2"):
        with pytest.raises(RackSpecError):
            parse_rack(bad)


def test_dihedral_involution_over_z():
    R = dihedral()
    for x, y in itertools.product(range(-5, 6), repeat=2):
        assert R.op(R.op(x, y), y) == x


@pytest.mark.parametrize("k", range(1, 13))
def test_cyclic_axioms(k):
    assert verify_rack_axioms(cyclic_rack(k))


@pytest.mark.parametrize("m", range(1, 13))
def test_dihedral_axioms(m):
    R = dihedral(m)
    assert verify_rack_axioms(R)
    assert is_quandle(R)


@pytest.mark.parametrize("n", range(1, 6))
def test_znr_axioms_random(n):
    rng = random.Random(n)
    R = znr(n)
    sample = [tuple(tuple(rng.randint(-50, 50) for _ in range(n)) for _ in range(3))
              for _ in range(1000)]
    assert verify_rack_axioms(R, sample)


def test_quandle_kink_is_identity():
    R = dihedral(5)
    Q = associated_quandle(R)
    tau = kink_map(R)
    for x, y in itertools.product(R.elements, repeat=2):
        assert tau(x) == x
        assert Q.op(x, y) == R.op(x, y)


def test_cyclic_kink():
    R = cyclic_rack(7)
    assert [kink_map(R)(a) for a in range(7)] == [(a + 1) % 7 for a in range(7)]


def test_znr_tau_example():
    R = znr(2)
    assert kink_map(R)((0, 1)) == (2, 3)
    assert znr_tau((0, 1)) == (2, 3)


def test_znr_tau_power_example():
    assert iterate(kink_map(znr(2)), (1, 0), 3) == (-5, -6)
    assert znr_tau_power((1, 0), 3) == (-5, -6)
    assert znr_tau_power((4, 9), 0) == (4, 9)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(tuples(n), tuples(n))),
       st.integers(-4, 4))
def test_closed_forms_match_fold(xy, w):
    x, y = xy
    n = len(x)
    R = znr(n)
    Q = associated_quandle(R)
    tau, tau_inv = kink_map(R), kink_inverse(R)
    q_op, t, tw = zn_closed_forms(n, x, y, w)
    assert q_op == Q.op(x, y) == znr_quandle_op(x, y)
    assert t == tau(x)
    assert tw == iterate(tau if w >= 0 else tau_inv, x, abs(w))


@given(st.sampled_from([1, 3, 5]).flatmap(tuples))
def test_tau_squared_identity_odd_n(x):
    tau = kink_map(znr(len(x)))
    assert tau(tau(x)) == x


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(tuples(n), tuples(n))))
def test_associated_quandle_is_a_quandle(xy):
    x, y = xy
    Q = associated_quandle(znr(len(x)))
    assert Q.op(x, x) == x
    assert Q.inv(Q.op(x, y), y) == x


def test_cyclic_rack_single_cyclic_component():
    R = cyclic_rack(6)
    comps = maximal_connected_subracks(R)
    assert comps == [tuple(range(6))]
    assert is_cyclic_subrack(R, comps[0])


def test_dihedral_3_connected_with_tau_lemma():
    R = dihedral(3)
    assert len(maximal_connected_subracks(R)) == 1
    assert verify_tau_lemma(R)


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_finite_product_racks_exhaustive(m, n):
    R = znr(n, m)
    assert verify_rack_axioms(R)
    assert verify_maxlem(R)
    assert verify_tau_lemma(R)
    decomp = inner_orbits(R)
    assert sorted(x for c in decomp.components for x in c) == sorted(R.elements)


def test_cyclic_shape_fails_for_odd_modulus_and_odd_n():
    # (Z/3)^3_R has a component on which tau has a fixed point but which is not a point
    assert not verify_maxlem(znr(3, 3))


def component_totals(w):
    """Signed under-pass count of each component of the closure."""
    signs = [0] * w.strands
    at = list(range(w.strands))
    for g in w.letters:
        i = abs(g) - 1
        top, bottom = at[i], at[i + 1]
        signs[bottom if g > 0 else top] += 1 if g > 0 else -1
        at[i], at[i + 1] = bottom, top
    labels = component_of_left_end(w)
    totals = {}
    for pos, c in enumerate(labels):
        totals[c] = totals.get(c, 0) + signs[pos]
    return [totals[c] for c in sorted(totals)]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@pytest.mark.parametrize("text", ["2: 1 1 1", "3: 1 -2 1 -2", "3: 1 1 2 2", "2: 1 1 1 1"])
def test_cyclic_colorings_follow_under_pass_counts(k, text):
    w = parse_braid(text)
    found = rack_colorings_of_closure(cyclic_rack(k), w)
    closes = all(t % k == 0 for t in component_totals(w))
    # one free choice per component when the counts are divisible, none otherwise
    assert len(found) == (k ** len(set(component_of_left_end(w))) if closes else 0)


def test_rack_colorings_need_finite_carrier():
    with pytest.raises(CarrierTooLarge):
        rack_colorings_of_closure(dihedral(), TREFOIL)
    with pytest.raises(CarrierTooLarge):
        rack_colorings_of_closure(dihedral(5), parse_braid("6: 1 2 3 4 5"), cap=100)


def test_dihedral_3_colorings_of_trefoil():
    # nine Fox 3-colorings, as in the tables
    assert len(rack_colorings_of_closure(dihedral(3), TREFOIL)) == 9


def test_rack_coloring_from_seed_agrees_with_z_coloring():
    d = close_braid(torus_braid(4, 4))
    rc = rack_coloring_from_seed(dihedral(), d, (1, 0, 0, 1))
    z = coloring_from_seed(d, (1, 0, 0, 1))
    assert [rc[a] for a in d.arcs] == list(z.colors)


def test_bijection_n1_is_identity():
    d = close_braid(TREFOIL)
    B = product_coloring_bijection(d, 1)
    c = B.forward([(5,), (5,)])
    assert c.colors == coloring_from_seed(d, (5, 5)).colors


def test_bijection_trefoil_n2_constant():
    B = product_coloring_bijection(close_braid(TREFOIL), 2)
    c = B.forward([(3, 3), (3, 3)])
    assert is_trivial(c)


@pytest.mark.parametrize("n", [2, 3])
def test_bijection_round_trip_on_lattice_basis(n):
    d = close_braid(TREFOIL)
    B = product_coloring_bijection(d, n)
    for v in coloring_lattice(B.parallel).basis:
        c = coloring_from_seed(B.parallel, seed_of(B.parallel, v))
        rack_seed = B.backward(c)
        assert B.forward(rack_seed).colors == c.colors
    # and the closing Z^n_R seeds agree with the parallel lattice
    flat = znr_seed_lattice(TREFOIL, n)
    assert len(flat) == coloring_lattice(B.parallel).rank


def test_bijection_needs_a_knot():
    with pytest.raises(ComponentCountNotOne):
        product_coloring_bijection(close_braid(torus_braid(2, 2)), 2)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_znr_propagation_equals_cable_propagation(flat):
    w = parse_braid("2: 1 -1 1")
    n = 2
    seed = [tuple(flat[:2]), tuple(flat[2:])]
    rack = rack_propagate(znr(n), w, seed)
    z = propagate(cable(w, n).cabled, [v for t in seed for v in band_to_tuple(t)])
    assert tuple(v for t in rack for v in band_to_tuple(t)) == z
