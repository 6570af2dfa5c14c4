import pytest
from hypothesis import given, strategies as st

from zcolor.errors import NotSquare
from zcolor.linalg import (
    IntMatrix,
    check_snf,
    det,
    hermite_basis,
    in_lattice,
    kernel_basis,
    minor_abs_det,
    rank,
    same_lattice,
    smith_normal_form,
)


@st.composite
def matrices(draw, max_dim=5, bound=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return IntMatrix.from_rows(rows, c)


def test_snf_hand_example():
    M = IntMatrix.from_rows([[2, -2], [-2, 2]])
    res = smith_normal_form(M)
    assert res.S.to_rows() == [[2, 0], [0, 0]]
    check_snf(M, res)


def test_snf_identity_and_zero():
    assert smith_normal_form(IntMatrix.identity(3)).S == IntMatrix.identity(3)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).S == IntMatrix.zeros(2, 3)


def test_snf_divisibility_repair():
    # diag(2, 3) is diagonal but not in Smith form
    M = IntMatrix.from_rows([[2, 0], [0, 3]])
    res = smith_normal_form(M)
    assert res.invariants == (1, 6)
    check_snf(M, res)


def test_kernel_examples():
    assert kernel_basis(IntMatrix.from_rows([[2, -2], [-2, 2]])) == [(1, 1)]
    assert kernel_basis(IntMatrix.zeros(0, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert kernel_basis(IntMatrix.identity(3)) == []


def test_minor_examples():
    hopf = IntMatrix.from_rows([[2, -2], [-2, 2]])
    assert minor_abs_det(hopf, 0, 0) == 2
    assert minor_abs_det(IntMatrix.from_rows([[7]]), 0, 0) == 1
    with pytest.raises(NotSquare):
        minor_abs_det(IntMatrix.zeros(2, 3), 0, 0)


def test_det_known_values():
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.from_rows([[2, 0, 1], [1, 3, 2], [1, 1, 2]])) == 6
    assert det(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_hermite_and_membership():
    assert same_lattice([(2, 0), (0, 2)], [(2, 2), (0, 2)])
    assert not same_lattice([(1, 0)], [(2, 0)])
    assert in_lattice([(1, 1), (0, 2)], (3, 5))
    assert not in_lattice([(1, 1), (0, 2)], (0, 1))
    assert hermite_basis([(0, 0)]) == []


@given(matrices())
def test_snf_postconditions(M):
    check_snf(M, smith_normal_form(M))


@given(matrices())
def test_kernel_is_saturated_basis(M):
    K = kernel_basis(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert not any(M.apply(v))
    # any integer solution found by scaling a rational one lies in the span
    if K:
        v = tuple(sum(k[i] * (j + 2) for j, k in enumerate(K)) for i in range(M.cols))
        assert in_lattice(K, v)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_hermite_is_canonical(vecs):
    h = hermite_basis(vecs)
    assert hermite_basis(h) == h
    assert hermite_basis(list(reversed(vecs))) == h
    for v in vecs:
        assert in_lattice(h, v)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_cofactor_expansion(rows):
    def cofactor(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * cofactor([r[:j] + r[j + 1:] for r in a[1:]])
                   for j in range(len(a)))
    assert det(IntMatrix.from_rows(rows)) == cofactor(rows)
