from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, Poly, symbols

from gclab.errors import BadCongruence, NotPrime, Reducible
from gclab.fields import (FiniteField, cyclic_algebra_split, kummer_h1_check,
                          kummer_ring_norms, power_quotient_order)

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


@pytest.mark.parametrize("p,k", [(2, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2), (7, 2)])
def test_field_axioms(p, k):
    F = FiniteField(p, k)
    q = p ** k
    els = list(F.elements)
    assert len(els) == q
    for x, y in product(els, repeat=2):
        assert F.mul(x, y) == F.mul(y, x)
        assert F.add(x, y) == F.add(y, x)
    for x, y, z in list(product(els, repeat=3))[:: max(1, q ** 3 // 3000)]:
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    for x in F.units:
        assert F.mul(x, F.inv(x)) == 1
        assert F.exp(F.log(x)) == x
    assert sorted(F.order(x) for x in F.units).count(q - 1) >= 1


def test_multiplication_matches_polynomial_arithmetic():
    t = symbols("t")
    F = FiniteField(3, 2)
    mod = Poly(list(reversed(F.modulus)), t, domain=GF(3))
    for x, y in product(F.elements, repeat=2):
        px = Poly(list(reversed(F.coeffs(x))), t, domain=GF(3))
        py = Poly(list(reversed(F.coeffs(y))), t, domain=GF(3))
        r = (px * py).rem(mod)
        coeffs = [int(c) % 3 for c in reversed(r.all_coeffs())]
        assert F.element(coeffs + [0] * (2 - len(coeffs))) == F.mul(x, y)


def test_reducible_modulus_rejected():
    with pytest.raises(Reducible):
        FiniteField(2, 2, modulus=(1, 0, 1))


def test_non_prime_rejected():
    with pytest.raises(NotPrime):
        FiniteField(4)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_roots_of_unity(p):
    F = FiniteField(p)
    for n in range(1, p):
        if (p - 1) % n:
            with pytest.raises(BadCongruence):
                F.root_of_unity(n)
        else:
            z = F.root_of_unity(n)
            assert F.order(z) == n


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", range(1, 9))
def test_power_quotient_is_gcd(p, n):
    assert power_quotient_order(p, n) == gcd(n, p - 1)


@pytest.mark.parametrize("p,n", [(p, n) for p in PRIMES for n in range(1, 7) if (p - 1) % n == 0])
def test_kummer_report_agrees(p, n):
    assert kummer_h1_check(p, n).agrees


def test_kummer_check_requires_congruence():
    with pytest.raises(BadCongruence):
        kummer_h1_check(7, 4)


def _norm_by_hand(p, n, a, coeffs, zeta):
    """Product of the conjugates ``e(zeta^i theta)`` in ``F_p[X]/(X^n - a)``."""
    X = symbols("X")
    mod = Poly([1] + [0] * (n - 1) + [-a], X, domain=GF(p))
    out = Poly(1, X, domain=GF(p))
    for i in range(n):
        conj = Poly(list(reversed([c * pow(zeta, i * j, p) for j, c in enumerate(coeffs)])),
                    X, domain=GF(p))
        out = (out * conj).rem(mod)
    return int(out.eval(0)) % p if out.degree() <= 0 else None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (5, 4), (7, 3), (7, 2), (13, 3)]),
       st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_split_witness_has_the_right_norm(pn, a, b):
    p, n = pn
    a, b = a % (p - 1) + 1, b % (p - 1) + 1
    v = cyclic_algebra_split(p, n, a, b)
    # every cyclic algebra over a finite field splits
    assert v.split
    zeta = FiniteField(p).root_of_unity(n)
    assert _norm_by_hand(p, n, a, list(v.witness), zeta) == b


def test_degenerate_kummer_reason():
    # X^2 - 4 is reducible mod 5
    assert cyclic_algebra_split(5, 2, 4, 2).reason == "DegenerateKummer"
    assert cyclic_algebra_split(5, 2, 2, 3).reason == "norm witness"


def test_norm_is_multiplicative():
    p, n, a = 7, 3, 3
    elems, norms = kummer_ring_norms(p, n, a)
    assert norms[1] == 1  # the unit element
    units = {int(v) for v in norms if v}
    assert units == set(range(1, p))
