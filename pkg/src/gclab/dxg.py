"""The cover ``D`` of a free H-set built from an extension ``1 -> A -> G -> H -> 1``.

Each H-orbit of ``X`` with representative ``x_a`` contributes one copy of
``G``; ``(g, a)`` lies over ``pi(g) . x_a``.  ``G`` acts on ``X`` through
``pi`` and on ``D`` by left multiplication, making ``D`` a torsor for the
action groupoid over ``X/H``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotAnAction, NotFree
from .groupoid import action_groupoid
from .torsor import find_torsor_isomorphism, validate_torsor


@dataclass(frozen=True, eq=False)
class DXGStructure:
    extension: object
    action: tuple          # action[h][x] of H on X
    points: tuple          # (g, orbit)
    projection: tuple      # D -> X
    representatives: tuple
    orbit_of: tuple        # X -> orbit index
    groupoid: object
    torsor: object


def _orbits(H, action, n):
    orbit_of = [None] * n
    orbits = []
    for x in range(n):
        if orbit_of[x] is None:
            orb = sorted({action[h][x] for h in range(H.order)})
            for y in orb:
                orbit_of[y] = len(orbits)
            orbits.append(orb)
    return orbits, orbit_of


def _check_free_action(H, action, n):
    if len(action) != H.order or any(len(r) != n for r in action):
        raise InvalidInput("need one row of length |X| per element of H")
    for h in range(H.order):
        for k in range(H.order):
            for x in range(n):
                if action[H.mul(h, k)][x] != action[h][action[k][x]]:
                    raise NotAnAction(f"({h}*{k}).{x} != {h}.({k}.{x})", witness=(h, k, x))
    for h in range(H.order):
        if h == H.identity:
            if any(action[h][x] != x for x in range(n)):
                raise NotAnAction("identity acts nontrivially")
            continue
        for x in range(n):
            if action[h][x] == x:
                raise NotFree(f"{H.label(h)} fixes point {x}", witness=(h, x))


def dxg_structure(n_points, action, E, representatives=None, groupoid=None):
    """Build ``D`` with its projection, groupoid and torsor.

    ``action[h][x]`` is the free action of ``H = E.quotient`` on
    ``range(n_points)``; representatives default to the lowest point of
    each orbit.  Passing ``groupoid`` reuses an identical action groupoid so
    that torsors from different builds can be compared.
    """
    H, G, pi = E.quotient, E.total, E.projection
    action = [tuple(int(v) for v in row) for row in action]
    _check_free_action(H, action, n_points)
    orbits, orbit_of = _orbits(H, action, n_points)
    if representatives is None:
        representatives = [orb[0] for orb in orbits]
    representatives = tuple(int(r) for r in representatives)
    if len(representatives) != len(orbits) or any(
            orbit_of[r] != i for i, r in enumerate(representatives)):
        raise InvalidInput("need exactly one representative per orbit, in orbit order")
    gx = [[action[pi(g)][x] for x in range(n_points)] for g in range(G.order)]
    X = action_groupoid(G, gx)
    if groupoid is not None:
        if groupoid.n_objects != X.n_objects or not np.array_equal(groupoid.comp, X.comp):
            raise InvalidInput("supplied groupoid differs from the action groupoid")
        X = groupoid
    points = [(g, a) for a in range(len(orbits)) for g in range(G.order)]
    index = {v: i for i, v in enumerate(points)}
    proj = [gx[g][representatives[a]] for g, a in points]
    act = np.full((X.n_morphisms, len(points)), -1, dtype=np.int64)
    for i, (g, a) in enumerate(points):
        x = proj[i]
        for h in range(G.order):
            act[h * n_points + x, i] = index[(G.mul(h, g), a)]
    labels = [f"{G.label(g)}.x{a}" for g, a in points]
    P = validate_torsor(X, len(orbits), [a for _, a in points], proj, act, labels)
    return DXGStructure(E, tuple(action), tuple(points), tuple(proj), representatives, tuple(orbit_of), X, P)


def representative_change(D, representatives):
    """Rebuild with other representatives and return ``(D2, isomorphism)``."""
    D2 = dxg_structure(len(D.orbit_of), D.action, D.extension, representatives,
                       D.groupoid)
    iso = find_torsor_isomorphism(D.torsor, D2.torsor)
    return D2, iso


def translation_action(H, orbits):
    """``orbits`` copies of ``H`` acted on by left translation."""
    n = H.order
    return [[a * n + H.mul(h, x) for a in range(orbits) for x in range(n)]
            for h in range(H.order)]
