import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from gclab.snf import cokernel_mod, invariant_factors, smith_mod, unit_normalizer


def _integer_cokernel(M, e):
    """Invariant factors of Z^r / (colspan M + e Z^r), via sympy over Z."""
    r = M.shape[0]
    full = np.hstack([M, e * np.eye(r, dtype=np.int64)])
    snf = smith_normal_form(Matrix(full.tolist()), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(r)]
    return sorted(d for d in diag if d != 1)


matrices = st.tuples(st.integers(1, 4), st.integers(1, 5), st.sampled_from([2, 3, 4, 6, 8, 12])).flatmap(
    lambda t: st.tuples(
        st.lists(st.lists(st.integers(0, 50), min_size=t[1], max_size=t[1]),
                 min_size=t[0], max_size=t[0]),
        st.just(t[2])))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_diagonalizes(data):
    rows, e = data
    M = np.array(rows, dtype=np.int64)
    sf = smith_mod(M, e)
    D = sf.U @ M @ sf.V % e
    k = min(M.shape)
    expected = np.zeros_like(D)
    for i in range(k):
        expected[i, i] = sf.d[i] % e
    assert (D == expected).all()
    assert (sf.U @ sf.Uinv % e == np.eye(M.shape[0], dtype=np.int64)).all()
    assert (sf.V @ sf.Vinv % e == np.eye(M.shape[1], dtype=np.int64)).all()
    for a, b in zip(sf.d, sf.d[1:]):
        assert b % a == 0
    assert all(e % x == 0 for x in sf.d)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_cokernel_matches_integer_smith_form(data):
    rows, e = data
    M = np.array(rows, dtype=np.int64)
    orders, gens, coords = cokernel_mod(M, e)
    assert orders == _integer_cokernel(M, e)
    for col in M.T:
        assert not any(coords(col))
    for i, g in enumerate(gens):
        c = coords(g)
        assert c == tuple(int(j == i) for j in range(len(gens)))


def test_cokernel_of_zero_map_is_everything():
    orders, gens, _ = cokernel_mod(np.zeros((2, 0), dtype=np.int64), 4)
    assert orders == [4, 4]


def test_modulus_one_is_trivial():
    orders, _, _ = cokernel_mod(np.array([[3]]), 1)
    assert orders == []


@pytest.mark.parametrize("a,e", [(4, 6), (3, 9), (5, 12), (0, 8), (6, 6)])
def test_unit_normalizer(a, e):
    from math import gcd

    w = unit_normalizer(a, e)
    assert gcd(w, e) == 1
    assert (w * a - gcd(a, e)) % e == 0


def test_invariant_factors_merges_coprime_parts():
    assert invariant_factors([2, 3]) == [6]
    assert invariant_factors([2, 4, 2]) == [2, 2, 4]
    assert invariant_factors([]) == []
