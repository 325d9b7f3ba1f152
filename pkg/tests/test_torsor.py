import pytest

from gclab.algebra import AbelianGroup, group_from_cyclic_factors
from gclab.errors import (AnchorMismatch, IncompatibleBases, NotBounded, NotConnected,
                          NotHomogeneous, NotPrincipal)
from gclab.groupoid import (action_groupoid, discrete_groupoid, groupoid_from_group,
                            pair_groupoid)
from gclab.morita import are_morita_equivalent
from gclab.torsor import (baer_sum, band_automorphism, contracted_groupoid,
                          contraction_to_left, find_torsor_isomorphism,
                          find_torsor_over_quotient, pullback_torsor, pushforward_torsor,
                          regular_torsor, tautological_torsor, torsor_automorphisms,
                          torsor_over_quotient, validate_torsor)

from test_morita import spread


def z(n):
    return group_from_cyclic_factors((n,))


def rotation(n, npts):
    return [[(x + g) % npts for x in range(npts)] for g in range(n)]


def test_regular_torsor_is_principal():
    X = pair_groupoid(3)
    P = regular_torsor(X)
    assert P.size == 3 and P.n_base == 1
    for p in range(3):
        for q in range(3):
            m = P.connecting(p, q)
            assert P.act(m, p) == q


def test_tautological_torsor_of_free_action():
    X = action_groupoid(z(2), [[0, 1, 2, 3], [1, 0, 3, 2]])
    P = tautological_torsor(X)
    assert P.n_base == 2
    assert P.proj == (0, 0, 1, 1)


def test_tautological_requires_trivial_isotropy():
    with pytest.raises(NotPrincipal):
        tautological_torsor(groupoid_from_group(z(2)))


def test_empty_fibre_is_rejected():
    X = discrete_groupoid(1)
    with pytest.raises(NotHomogeneous):
        validate_torsor(X, 2, [0], [0], [[0]])


def test_anchor_violation():
    X = pair_groupoid(2)
    with pytest.raises(AnchorMismatch):
        validate_torsor(X, 1, [0, 0], [0, 1], [[1, -1], [-1, -1], [-1, 0], [-1, 1]])


def test_two_points_in_one_fibre_over_a_group_need_the_group():
    X = groupoid_from_group(z(3))
    P = regular_torsor(X)
    assert P.size == 3
    Q = torsor_over_quotient(X, [0])
    assert find_torsor_isomorphism(P, Q) is not None


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("base", ["z2", "z4_on_2", "pair2"])
def test_push_then_pull_roundtrip(base, k):
    X = {"z2": groupoid_from_group(z(2)),
         "z4_on_2": action_groupoid(z(4), rotation(4, 2)),
         "pair2": pair_groupoid(2)}[base]
    Y, F = spread(X, k)
    P = regular_torsor(Y)
    Q = pushforward_torsor(F, P)
    assert Q.groupoid is X and Q.size == P.size // k
    back = pullback_torsor(F, Q)
    assert back.groupoid is Y
    assert find_torsor_isomorphism(P, back) is not None
    # pulling back first then pushing forward also returns the torsor
    R = regular_torsor(X)
    assert find_torsor_isomorphism(pushforward_torsor(F, pullback_torsor(F, R)), R) is not None


def test_torsor_automorphisms_match_band():
    X = action_groupoid(z(4), rotation(4, 2))
    A = AbelianGroup((2,))
    P = regular_torsor(X)
    auts = torsor_automorphisms(P, A)
    assert len(auts) == 2
    # composition corresponds to addition
    for a in A.elements:
        for b in A.elements:
            ab = tuple(auts.maps[a].map[auts.maps[b].map[p]] for p in range(P.size))
            assert auts.identify(ab) == A.add(a, b)


def test_automorphisms_need_connected_bounded_groupoid():
    with pytest.raises(NotConnected):
        torsor_automorphisms(find_torsor_over_quotient(discrete_groupoid(2)),
                             AbelianGroup((1,)))
    with pytest.raises(NotBounded):
        torsor_automorphisms(regular_torsor(groupoid_from_group(z(3))), AbelianGroup((2,)))


def test_band_automorphism_is_equivariant():
    X = groupoid_from_group(z(4))
    P = regular_torsor(X)
    A = AbelianGroup((4,))
    band = torsor_automorphisms(P, A).band
    phi = band_automorphism(P, band, (1,))
    for m in range(X.n_morphisms):
        for p in range(P.size):
            assert phi[P.act(m, p)] == P.act(m, phi[p])


def test_contracted_groupoid_is_bounded_and_equivalent():
    A = AbelianGroup((2,))
    X = action_groupoid(z(4), rotation(4, 2))
    Y = groupoid_from_group(z(2))
    bX = torsor_automorphisms(regular_torsor(X), A).band
    bY = torsor_automorphisms(regular_torsor(Y), A).band
    C = contracted_groupoid(X, bX, Y, bY)
    assert C.groupoid.n_objects == 2
    assert C.groupoid.n_morphisms == X.n_morphisms * Y.n_morphisms // 2
    contraction_to_left(C)
    assert are_morita_equivalent(C.groupoid, X) is not None


def test_baer_sum_of_regular_torsors():
    A = AbelianGroup((3,))
    X = groupoid_from_group(z(3))
    P = regular_torsor(X)
    S = baer_sum(P, P, A)
    assert S.torsor.size == 3
    F = contraction_to_left(S.contracted)
    assert find_torsor_isomorphism(pushforward_torsor(F, S.torsor), P) is not None


def test_baer_sum_needs_common_base():
    P = regular_torsor(pair_groupoid(2))
    Q = tautological_torsor(discrete_groupoid(2))
    with pytest.raises(IncompatibleBases):
        baer_sum(P, Q, AbelianGroup((1,)))
