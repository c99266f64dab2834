import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathrep.lattice import Lattice, determinant, hermite, mat_mul, unimodular_inverse, vec_mat


def nonsingular(d):
    rows = st.lists(st.lists(st.integers(-4, 4), min_size=d, max_size=d), min_size=d, max_size=d)
    return rows.filter(lambda m: determinant(m) != 0)


def test_index_and_transversal():
    y = Lattice([[2, 0], [0, 1]])
    assert y.index == 2
    assert y.transversal() == [(0, 0), (1, 0)]
    assert y.contains((4, -7)) and not y.contains((3, 0))


def test_singular_basis_rejected():
    with pytest.raises(ValueError):
        Lattice([[1, 2], [2, 4]])


def test_unimodular_inverse():
    g = ((0, 1), (1, 0))
    assert mat_mul(g, unimodular_inverse(g)) == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        unimodular_inverse(((2, 0), (0, 1)))


@given(st.sampled_from([1, 2, 3]).flatmap(nonsingular))
def test_hermite_form(rows):
    h, u = hermite(rows)
    assert mat_mul(u, rows) == h
    assert abs(determinant(u)) == 1
    d = len(rows)
    for i in range(d):
        assert h[i][i] > 0
        assert all(h[i][j] == 0 for j in range(i))
        assert all(0 <= h[k][i] < h[i][i] for k in range(i))


@given(st.sampled_from([1, 2, 3]).flatmap(nonsingular), st.data())
def test_reduce_coords_consistent(rows, data):
    y = Lattice(rows)
    d = len(rows)
    v = data.draw(st.tuples(*[st.integers(-20, 20)] * d))
    r = y.reduce(v)
    assert r in set(y.transversal())
    diff = tuple(a - b for a, b in zip(v, r))
    c = y.coords(diff)
    assert c is not None and vec_mat(c, y.basis) == diff
    assert len(y.transversal()) == y.index == abs(determinant(rows))
