import pytest

from gclab.algebra import AbelianGroup, group_from_cyclic_factors, trivial_module
from gclab.cohomology import Cochain
from gclab.errors import InvalidInput, NotAnAction, NotFree
from gclab.extensions import extension_from_cocycle
from gclab.dxg import dxg_structure, representative_change, translation_action
from gclab.torsor import validate_torsor_morphism


def z2_by_z2(twisted):
    M = trivial_module(group_from_cyclic_factors((2,)), AbelianGroup((2,)))
    h = Cochain.from_records(M, 2, {(1, 1): (1,)}) if twisted else Cochain.zero(M, 2)
    return extension_from_cocycle(M, h)


@pytest.mark.parametrize("twisted", [False, True])
@pytest.mark.parametrize("orbits", [1, 2, 3])
def test_structure_sizes_and_fibres(twisted, orbits):
    E = z2_by_z2(twisted)
    H = E.quotient
    D = dxg_structure(H.order * orbits, translation_action(H, orbits), E)
    assert len(D.points) == E.total.order * orbits
    P = D.torsor
    assert P.n_base == orbits
    # every point of X has |A| preimages in D
    for x in range(H.order * orbits):
        assert D.projection.count(x) == E.kernel.order


def test_projection_is_equivariant():
    E = z2_by_z2(True)
    H = E.quotient
    action = translation_action(H, 2)
    D = dxg_structure(4, action, E)
    X = D.groupoid
    for m in range(X.n_morphisms):
        g, x = divmod(m, 4)
        for i in range(len(D.points)):
            if D.projection[i] == x:
                j = D.torsor.act(m, i)
                assert D.projection[j] == action[E.projection(g)][x]


def test_representative_change_gives_isomorphic_torsor():
    E = z2_by_z2(True)
    H = E.quotient
    D = dxg_structure(4, translation_action(H, 2), E)
    D2, iso = representative_change(D, (1, 3))
    assert iso is not None
    validate_torsor_morphism(D.torsor, D2.torsor, iso.map)
    assert D2.representatives == (1, 3)


def test_non_free_action_rejected():
    E = z2_by_z2(False)
    with pytest.raises(NotFree) as err:
        dxg_structure(3, [[0, 1, 2], [1, 0, 2]], E)
    assert err.value.witness == (1, 2)


def test_non_action_rejected():
    E = z2_by_z2(False)
    with pytest.raises(NotAnAction):
        dxg_structure(2, [[1, 0], [1, 0]], E)


def test_bad_representatives_rejected():
    E = z2_by_z2(False)
    with pytest.raises(InvalidInput):
        dxg_structure(4, translation_action(E.quotient, 2), E, representatives=(0, 1))
