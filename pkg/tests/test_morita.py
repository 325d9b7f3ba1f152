from itertools import product

import pytest

from gclab.algebra import group_from_cyclic_factors
from gclab.errors import (NotFullyFaithful, NotFunctorial, NotHomogeneous,
                          NotSurjectiveOnObjects, ValidationError)
from gclab.groupoid import (action_groupoid, discrete_groupoid, equivalence_relation_groupoid,
                            groupoid_from_group, groupoid_quotient, pair_groupoid,
                            validate_groupoid)
from gclab.morita import (are_morita_equivalent, bitorsor_from_morphism, identity_morphism,
                          linking_groupoid, quotient_bijection, validate_bitorsor,
                          validate_functor, validate_morita_morphism)


def z(n):
    return group_from_cyclic_factors((n,))


def spread(X, k):
    """``X x pair(k)`` together with the collapse functor onto ``X``."""
    objs = [(x, i) for x in range(X.n_objects) for i in range(k)]
    oi = {o: n for n, o in enumerate(objs)}
    mors = [(f, i, j) for f in range(X.n_morphisms) for i in range(k) for j in range(k)]
    mi = {m: n for n, m in enumerate(mors)}
    comp = {}
    for (f, i, j), (g, j2, l) in product(mors, repeat=2):
        if j == j2 and X.tgt[f] == X.src[g]:
            comp[(mi[(f, i, j)], mi[(g, j, l)])] = mi[(X.compose(f, g), i, l)]
    Y = validate_groupoid(len(objs), [oi[(X.src[f], i)] for f, i, _ in mors],
                          [oi[(X.tgt[f], j)] for f, _, j in mors], comp)
    F = validate_morita_morphism(Y, X, [x for x, _ in objs], [f for f, _, _ in mors])
    return Y, F


def rotation(n, npts):
    return [[(x + g) % npts for x in range(npts)] for g in range(n)]


def test_collapse_is_morita():
    Y, F = spread(groupoid_from_group(z(3)), 2)
    assert Y.n_objects == 2 and Y.n_morphisms == 12
    assert quotient_bijection(F) == {0: 0}


def test_non_surjective_functor():
    X = discrete_groupoid(1)
    Y = discrete_groupoid(2)
    with pytest.raises(NotSurjectiveOnObjects):
        validate_morita_morphism(X, Y, [0], [0])


def test_not_full():
    X = discrete_groupoid(2)
    Y = pair_groupoid(2)
    with pytest.raises(NotFullyFaithful):
        validate_morita_morphism(X, Y, [0, 1], [Y.id_of[0], Y.id_of[1]])


def test_not_functorial():
    G = groupoid_from_group(z(3))
    with pytest.raises(NotFunctorial):
        validate_functor(G, G, [0], [0, 1, 1])


def test_bitorsor_from_morphism_and_linking():
    X = groupoid_from_group(z(2))
    Y, F = spread(X, 3)
    B = bitorsor_from_morphism(F)
    W = linking_groupoid(B)
    assert W.groupoid.n_objects == Y.n_objects + X.n_objects
    assert len(groupoid_quotient(W.groupoid)) == 1


def test_identity_bitorsor():
    X = action_groupoid(z(4), rotation(4, 2))
    B = bitorsor_from_morphism(identity_morphism(X))
    assert B.size == X.n_morphisms
    linking_groupoid(B)


def test_bitorsor_missing_anchor_is_rejected():
    X = discrete_groupoid(2)
    Y = discrete_groupoid(1)
    # a single point anchored at object 0 of X, so object 1 has nothing over it
    with pytest.raises(NotHomogeneous):
        validate_bitorsor(X, Y, [0], [0], [[0], [-1]], [[0]])


EQUIVALENT = [
    (pair_groupoid(3), discrete_groupoid(1)),
    (action_groupoid(z(4), rotation(4, 2)), groupoid_from_group(z(2))),
    (equivalence_relation_groupoid([[0, 2], [1]]), discrete_groupoid(2)),
    (action_groupoid(z(6), rotation(6, 3)), groupoid_from_group(z(2))),
]

INEQUIVALENT = [
    (groupoid_from_group(z(2)), groupoid_from_group(z(3))),
    (groupoid_from_group(z(4)), groupoid_from_group(group_from_cyclic_factors((2, 2)))),
    (discrete_groupoid(2), pair_groupoid(2)),
    # the fixed point carries Z/2 isotropy
    (action_groupoid(z(2), [[0, 1, 2], [0, 2, 1]]), discrete_groupoid(2)),
    (action_groupoid(z(4), rotation(4, 2)), groupoid_from_group(z(4))),
]


@pytest.mark.parametrize("i", range(len(EQUIVALENT)))
def test_equivalent_pairs_have_certificates(i):
    X, Y = EQUIVALENT[i]
    for a, b in ((X, Y), (Y, X)):
        B = are_morita_equivalent(a, b)
        assert B is not None
        W = linking_groupoid(B).groupoid
        assert len(groupoid_quotient(W)) == len(groupoid_quotient(a))


@pytest.mark.parametrize("i", range(len(INEQUIVALENT)))
def test_inequivalent_pairs(i):
    X, Y = INEQUIVALENT[i]
    assert are_morita_equivalent(X, Y) is None
    assert are_morita_equivalent(Y, X) is None


def _aut_orders(X):
    return sorted(X.aut_group(c[0])[0].order for c in groupoid_quotient(X).classes)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_spread_groupoids_are_equivalent_to_their_base(k):
    base = action_groupoid(z(2), [[0, 1, 2], [0, 2, 1]])
    Y, _ = spread(base, k)
    assert are_morita_equivalent(Y, base) is not None
    assert _aut_orders(Y) == _aut_orders(base)


def test_quotient_bijection_rejects_splitting():
    X = discrete_groupoid(2)
    F = validate_functor(X, X, [0, 0], [X.id_of[0], X.id_of[0]], fully_faithful=False)
    with pytest.raises(ValidationError):
        quotient_bijection(F)
