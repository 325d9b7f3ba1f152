import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gclab.algebra import (AbelianGroup, find_group_isomorphism, group_from_cyclic_factors,
                           module_from_matrices, trivial_module, validate_group)
from gclab.cohomology import Cochain, cohomologous, cohomology_group, differential
from gclab.errors import NotACocycle, NotASection, NotSplit, ValidationError
from gclab.extensions import (cocycle_from_extension, extension_from_cocycle,
                              extension_from_data, extensions_isomorphic, make_section,
                              sections_mod_conjugation, twist_section)


def trivial(group_moduli, coeff_moduli):
    return trivial_module(group_from_cyclic_factors(group_moduli), AbelianGroup(coeff_moduli))


def negation(n):
    return module_from_matrices(group_from_cyclic_factors((2,)), AbelianGroup((n,)),
                                [[[1]], [[-1]]])


MODULES = [trivial((2,), (2,)), trivial((3,), (3,)), trivial((2, 2), (2,)),
           trivial((4,), (2,)), trivial((2,), (4,)), negation(3), negation(4)]


def random_cocycle(M, seed):
    H = cohomology_group(M, 2)
    rng = np.random.default_rng(seed)
    coords = tuple(int(rng.integers(0, m)) for m in H.invariant_factors)
    g = Cochain(M, 1, rng.integers(0, 64, size=(M.group.order, M.coeffs.rank)))
    return H.element(coords) + differential(g), coords


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MODULES), st.integers(0, 10 ** 6))
def test_canonical_section_recovers_cocycle(M, seed):
    h, _ = random_cocycle(M, seed)
    E = extension_from_cocycle(M, h)
    assert E.total.order == M.group.order * M.coeffs.order
    assert cocycle_from_extension(E, E.canonical_section()) == h


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODULES), st.integers(0, 10 ** 6))
def test_other_sections_give_cohomologous_cocycles(M, seed):
    h, _ = random_cocycle(M, seed)
    E = extension_from_cocycle(M, h)
    rng = np.random.default_rng(seed)
    j = [E.fibre(s)[int(rng.integers(0, M.coeffs.order))] for s in range(M.group.order)]
    f = cocycle_from_extension(E, j)
    assert cohomologous(f, h) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODULES), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_isomorphic_iff_cohomologous(M, s1, s2):
    h1, c1 = random_cocycle(M, s1)
    h2, c2 = random_cocycle(M, s2)
    E1, E2 = extension_from_cocycle(M, h1), extension_from_cocycle(M, h2)
    iso = extensions_isomorphic(E1, E2, method="search")
    lin = extensions_isomorphic(E1, E2, method="linear")
    assert (iso is not None) == (c1 == c2) == (lin is not None)
    if iso is not None:
        for a in M.coeffs.elements:
            assert iso(E1.k(a)) == E2.k(a)
        for x in range(E1.total.order):
            assert E2.projection(iso(x)) == E1.projection(x)


def test_non_cocycle_gives_witness():
    M = trivial((2,), (2,))
    bad = Cochain.from_records(M, 2, {(0, 1): (1,)})
    with pytest.raises(NotACocycle) as err:
        extension_from_cocycle(M, bad)
    assert len(err.value.witness) == 3


def test_carry_cocycle_gives_cyclic_group():
    M = trivial((2,), (2,))
    h = Cochain.from_records(M, 2, {(1, 1): (1,)})
    E = extension_from_cocycle(M, h)
    assert find_group_isomorphism(E.total, group_from_cyclic_factors((4,))) is not None


def test_mixed_product_cocycle_is_nonabelian_of_order_eight():
    # H = (Z/2)^2 indexed as 2*i + j, h(s, t) = s_2 t_1
    M = trivial((2, 2), (2,))
    h = Cochain.from_function(M, 2, lambda s, t: (s % 2) * (t // 2))
    E = extension_from_cocycle(M, h)
    assert E.total.order == 8
    assert not E.total.is_abelian
    centre = [x for x in range(8) if all(E.total.mul(x, y) == E.total.mul(y, x) for y in range(8))]
    assert sorted(centre) == sorted(E.embed)


def test_trivial_cocycle_splits():
    M = negation(3)
    E = extension_from_cocycle(M, Cochain.zero(M, 2))
    assert E.canonical_section().homomorphic
    S3 = validate_group([[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
                         [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]])
    assert find_group_isomorphism(E.total, S3) is not None


def test_bad_section_is_rejected():
    M = trivial((2,), (2,))
    E = extension_from_cocycle(M, Cochain.zero(M, 2))
    with pytest.raises(NotASection):
        make_section(E, [E.fibre(1)[0], E.fibre(0)[0]])


def test_extension_from_explicit_data():
    Z4 = group_from_cyclic_factors((4,))
    E = extension_from_data(Z4, AbelianGroup((2,)), [0, 2], group_from_cyclic_factors((2,)),
                            [0, 1, 0, 1])
    assert E.module.is_trivial
    f = cocycle_from_extension(E, [0, 1])
    assert cohomology_group(E.module, 2).class_of(f) == (1,)
    with pytest.raises(ValidationError):
        extension_from_data(Z4, AbelianGroup((2,)), [0, 1], group_from_cyclic_factors((2,)),
                            [0, 1, 0, 1])


@pytest.mark.parametrize("M", [trivial((2,), (2,)), trivial((2,), (3,)), negation(3),
                               negation(4), trivial((2, 2), (2,)), trivial((3,), (3,))],
                         ids=str)
def test_section_classes_match_first_cohomology(M):
    E = extension_from_cocycle(M, Cochain.zero(M, 2))
    sc = sections_mod_conjugation(E)
    assert sc.orbit_count == cohomology_group(M, 1).order
    for j in sc.sections:
        assert make_section(E, j).homomorphic


def test_twisting_by_a_cocycle_keeps_sections_homomorphic():
    M = trivial((2,), (2,))
    E = extension_from_cocycle(M, Cochain.zero(M, 2))
    j = E.canonical_section().map
    z = cohomology_group(M, 1).element((1,))
    assert make_section(E, twist_section(E, z, j)).homomorphic


def test_nonsplit_extension_has_no_sections():
    M = trivial((2,), (2,))
    E = extension_from_cocycle(M, Cochain.from_records(M, 2, {(1, 1): (1,)}))
    with pytest.raises(NotSplit):
        sections_mod_conjugation(E)
