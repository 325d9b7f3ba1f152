from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gclab.algebra import (AbelianGroup, AbelianHom, find_group_isomorphism,
                           group_from_cyclic_factors, invariants_subgroup,
                           iter_group_isomorphisms, module_from_matrices,
                           trivial_module, validate_gmodule, validate_group,
                           validate_hom)
from gclab.errors import (NoIdentity, NoInverse, NotAssociative, NotAutomorphism,
                          NotCompatible, NotHomomorphism)


def s3_table():
    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]


def negation_module(n):
    G = group_from_cyclic_factors((2,))
    return module_from_matrices(G, AbelianGroup((n,)), [[[1]], [[-1]]])


def brute_axioms(G):
    n = G.order
    t = G.table
    e = G.identity
    assert all(t[e, a] == a == t[a, e] for a in range(n))
    assert all(t[a, G.inv(a)] == e for a in range(n))
    assert all(t[t[a, b], c] == t[a, t[b, c]] for a, b, c in product(range(n), repeat=3))


def test_z2_is_xor():
    G = group_from_cyclic_factors([2])
    assert G.order == 2
    assert G.table.tolist() == [[0, 1], [1, 0]]


def test_trivial_group():
    assert group_from_cyclic_factors([1]).order == 1


def test_klein_four_exponent_two():
    G = group_from_cyclic_factors([2, 2])
    assert sorted(G.element_order(a) for a in range(4)) == [1, 2, 2, 2]


@pytest.mark.parametrize("m", range(1, 13))
def test_cyclic_generator_has_full_order(m):
    G = group_from_cyclic_factors([m])
    assert G.element_order(1 % m) == m
    brute_axioms(G)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_products_satisfy_axioms(moduli):
    G = group_from_cyclic_factors(moduli)
    brute_axioms(G)
    assert G.is_abelian


def test_validate_xor():
    G = validate_group([[0, 1], [1, 0]])
    assert G.identity == 0


def test_constant_row_is_rejected():
    with pytest.raises((NoInverse, NoIdentity, NotAssociative)):
        validate_group([[1, 1], [0, 1]])


def test_broken_row_reports_associativity_witness():
    with pytest.raises(NotAssociative) as err:
        validate_group([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    a, b, c = err.value.witness
    t = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_s3_by_hand():
    G = validate_group(s3_table())
    assert G.order == 6
    assert not G.is_abelian
    assert len(G.generators) == 2
    assert len(G.generated(G.generators)) == 6


def test_trivial_action_validates():
    G = group_from_cyclic_factors((2,))
    A = AbelianGroup((2,))
    M = validate_gmodule(G, A, [[0, 1], [0, 1]])
    assert M.is_trivial


def test_negation_on_z3_validates():
    M = negation_module(3)
    assert M.act(1, (1,)) == (2,)


def test_translation_is_not_an_automorphism():
    G = group_from_cyclic_factors((2,))
    with pytest.raises(NotAutomorphism):
        validate_gmodule(G, AbelianGroup((4,)), [[0, 1, 2, 3], [1, 2, 3, 0]])


def test_incompatible_action():
    G = group_from_cyclic_factors((3,))
    A = AbelianGroup((3,))
    # negation is an automorphism but a Z/3 action needs order dividing 3
    with pytest.raises(NotCompatible):
        validate_gmodule(G, A, [[0, 1, 2], [0, 2, 1], [0, 2, 1]])


def _fixed_elements(M):
    B, inc = invariants_subgroup(M)
    return sorted(inc(b) for b in B.elements)


def test_invariants_trivial_action_is_everything():
    M = trivial_module(group_from_cyclic_factors((2,)), AbelianGroup((2, 2)))
    assert _fixed_elements(M) == sorted(M.coeffs.elements)


def test_invariants_negation_z3():
    assert _fixed_elements(negation_module(3)) == [(0,)]


def test_invariants_negation_z4():
    assert _fixed_elements(negation_module(4)) == [(0,), (2,)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6, 8]), st.integers(0, 7))
def test_invariants_closed_and_exact(n, k):
    # Z/2 acting on Z/n by multiplication with a square-one unit
    units = [u for u in range(1, n) if (u * u) % n == 1] or [1]
    u = units[k % len(units)]
    G = group_from_cyclic_factors((2,))
    M = module_from_matrices(G, AbelianGroup((n,)), [[[1]], [[u]]])
    fixed = _fixed_elements(M)
    assert (0,) in fixed
    A = M.coeffs
    assert all(A.add(a, b) in fixed for a in fixed for b in fixed)
    assert fixed == sorted(a for a in A.elements if M.act(1, a) == a)


def test_abelian_hom_validation():
    A, B = AbelianGroup((4,)), AbelianGroup((2,))
    f = AbelianHom(A, B, [[1]])
    assert f((3,)) == (1,)
    with pytest.raises(NotHomomorphism):
        AbelianHom(B, A, [[1]])


def test_group_hom_kernel():
    Z4, Z2 = group_from_cyclic_factors((4,)), group_from_cyclic_factors((2,))
    f = validate_hom(Z4, Z2, [0, 1, 0, 1])
    assert f.is_surjective
    assert sorted(f.kernel()) == [0, 2]
    with pytest.raises(NotHomomorphism):
        validate_hom(Z4, Z2, [0, 1, 1, 0])


def test_isomorphism_counts():
    K = group_from_cyclic_factors((2, 2))
    assert len(list(iter_group_isomorphisms(K, K))) == 6
    Z4 = group_from_cyclic_factors((4,))
    assert len(list(iter_group_isomorphisms(Z4, Z4))) == 2
    assert find_group_isomorphism(K, Z4) is None
    S3 = validate_group(s3_table())
    assert len(list(iter_group_isomorphisms(S3, S3))) == 6


def test_abelian_group_indexing_roundtrip():
    A = AbelianGroup((2, 3, 4))
    assert [A.index(a) for a in A.elements] == list(range(A.order))
    assert A.exponent == 12
    assert AbelianGroup((6,)).isomorphic(AbelianGroup((2, 3)))


def test_module_matrices_columns_are_images():
    M = negation_module(4)
    assert np.array_equal(M.matrices[1], np.array([[3]]))
