"""Quantum-torus data over F_p: the matrices, the projective cocycle of the
lifts, the Heisenberg extension and the splitting groupoid over a fibre.

Matrices are numpy integer arrays reduced mod ``p``.  The Galois group is
``(Z/n)^2`` with ``alpha^i beta^j`` stored at index ``i*n + j``; lifts are
extended from the generators by ``g(alpha^i beta^j) = g_alpha^i g_beta^j``.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np
from sympy import Matrix, nextprime

from .algebra import AbelianGroup, group_from_cyclic_factors, trivial_module
from .cohomology import Cochain, is_cocycle
from .errors import (BadCongruence, InvalidInput, NotACocycle, NotScalar,
                     ValidationError)
from .extensions import extension_from_cocycle
from .fields import FiniteField
from .groupoid import Band, validate_groupoid


def mat_mul(p, *ms):
    out = ms[0] % p
    for m in ms[1:]:
        out = out @ m % p
    return out


def mat_pow(p, m, e):
    out = np.eye(len(m), dtype=np.int64)
    for _ in range(e):
        out = out @ m % p
    return out


def mat_inv(p, m):
    try:
        inv = Matrix(m.tolist()).inv_mod(p)
    except ValueError:
        return None
    return np.array(inv.tolist(), dtype=np.int64) % p


def scalar_value(p, m):
    """``c`` if ``m == c I`` mod ``p``, else ``None``."""
    c = int(m[0, 0]) % p
    return c if ((m - c * np.eye(len(m), dtype=np.int64)) % p == 0).all() else None


@dataclass(frozen=True, eq=False)
class QuantumTorusData:
    n: int
    p: int
    field: FiniteField
    zeta: int
    g_alpha: np.ndarray
    g_beta: np.ndarray

    @property
    def gal(self):
        return group_from_cyclic_factors((self.n, self.n))

    def u(self, mu, nu):
        return np.diag([mu * pow(self.zeta, i, self.p) % self.p for i in range(self.n)])

    def v(self, mu, nu):
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            m[(i + 1) % self.n, i] = nu % self.p
        return m

    def lifts(self):
        return lift_table(self.n, self.p, self.g_alpha, self.g_beta)

    def deck(self, sigma, point):
        """``alpha^i beta^j`` sends ``(mu, nu)`` to ``(zeta^i mu, zeta^j nu)``."""
        i, j = divmod(sigma, self.n)
        mu, nu = point
        return (mu * pow(self.zeta, i, self.p) % self.p, nu * pow(self.zeta, j, self.p) % self.p)

    def identity_failures(self):
        """Points and names of the matrix identities that fail; empty when all hold."""
        p, n, z = self.p, self.n, self.zeta
        bad = []
        eye = np.eye(n, dtype=np.int64)
        for mu, nu in product(range(1, p), repeat=2):
            u, v = self.u(mu, nu), self.v(mu, nu)
            if ((mat_mul(p, u, v) - z * mat_mul(p, v, u)) % p).any():
                bad.append(("uv = zeta vu", (mu, nu)))
        ga, gb = self.g_alpha, self.g_beta
        comm = mat_mul(p, gb, ga, mat_inv(p, gb), mat_inv(p, ga))
        if scalar_value(p, comm) != z:
            bad.append(("g_beta g_alpha g_beta^-1 g_alpha^-1 = zeta", None))
        if (mat_pow(p, ga, n) != eye).any() or (mat_pow(p, gb, n) != eye).any():
            bad.append(("g^n = 1", None))
        return bad


def quantum_torus_data(n, p):
    """Matrices of the quantum torus with ``q = zeta`` over ``F_p``; needs ``n | p - 1``."""
    n, p = int(n), int(p)
    F = FiniteField(p)
    if n < 1 or (p - 1) % n:
        raise BadCongruence(f"{n} does not divide {p - 1}", witness=(p, n))
    zeta = F.root_of_unity(n)
    ga = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        ga[(i + 1) % n, i] = 1
    gb = np.diag([pow(zeta, i, p) for i in range(n)]).astype(np.int64)
    data = QuantumTorusData(n, p, F, zeta, ga, gb)
    bad = data.identity_failures()
    if bad:
        raise ValidationError(f"matrix identity fails: {bad[0][0]}", witness=bad[0])
    return data


def lift_table(n, p, g_alpha, g_beta):
    """Extend lifts from the two generators by ``alpha^i beta^j -> g_alpha^i g_beta^j``."""
    return [mat_mul(p, mat_pow(p, g_alpha, i), mat_pow(p, g_beta, j))
            for i in range(n) for j in range(n)]


def _discrepancies(n, p, zeta, lifts, entry_action=None):
    """``log_zeta`` of ``g(s) s(g(t)) g(st)^-1`` for all pairs; raises NotScalar."""
    G = group_from_cyclic_factors((n, n))
    lifts = [np.asarray(m, dtype=np.int64) % p for m in lifts]
    if len(lifts) != G.order:
        raise InvalidInput(f"need {G.order} lifts, got {len(lifts)}")
    invs = [mat_inv(p, m) for m in lifts]
    logs = {pow(zeta, i, p): i for i in range(n)}
    table = np.zeros((G.order, G.order), dtype=np.int64)
    for s in range(G.order):
        for t in range(G.order):
            st = G.mul(s, t)
            gt = entry_action(s, lifts[t]) if entry_action else lifts[t]
            if invs[st] is None:
                raise NotScalar(f"lift of {st} is not invertible", witness=(s, t))
            c = scalar_value(p, mat_mul(p, lifts[s], gt, invs[st]))
            if c not in logs:
                raise NotScalar(f"g({s}) {s}(g({t})) g({st})^-1 is not a root-of-unity scalar",
                                witness=(s, t))
            table[s, t] = logs[c]
    return G, table


def pgl_obstruction_cocycle(n, p, lifts=None, zeta=None, entry_action=None):
    """The ``Z/n``-valued 2-cocycle of projective lifts over ``(Z/n)^2``.

    ``lifts`` is either a pair ``(g_alpha, g_beta)`` or a full table indexed
    by the group; it defaults to the quantum-torus matrices.
    """
    if lifts is None or zeta is None:
        data = quantum_torus_data(n, p)
        zeta = data.zeta if zeta is None else zeta
        lifts = data.lifts() if lifts is None else lifts
    if len(lifts) == 2:
        lifts = lift_table(n, p, *lifts)
    G, table = _discrepancies(n, p, zeta, lifts, entry_action)
    M = trivial_module(G, AbelianGroup((n,)))
    h = Cochain(M, 2, table[..., None])
    chk = is_cocycle(h)
    if not chk:
        raise NotACocycle("projective discrepancies fail the cocycle identity",
                          witness=chk.witness)
    return h


def heisenberg_extension(n):
    """Extension of ``(Z/n)^2`` by ``Z/n`` from the quantum-torus cocycle.

    For ``n > 1`` the total group is nonabelian of order ``n^3`` and the
    commutator of the lifts of the generators is central of order ``n``.
    """
    n = int(n)
    if not 1 <= n <= 5:
        raise InvalidInput("n must be between 1 and 5")
    if n == 1:
        G = group_from_cyclic_factors((1, 1))
        M = trivial_module(G, AbelianGroup((1,)))
        return extension_from_cocycle(M, Cochain.zero(M, 2))
    p = nextprime(n)
    while (p - 1) % n:
        p = nextprime(p)
    h = pgl_obstruction_cocycle(n, p)
    E = extension_from_cocycle(h.module, h)
    T = E.total
    s = E.canonical_section()
    alpha, beta = n, 1
    c = T.prod(s(alpha), s(beta), T.inv(s(alpha)), T.inv(s(beta)))
    if T.order != n ** 3 or T.is_abelian:
        raise ValidationError("extension is not nonabelian of order n^3")
    if any(T.mul(c, x) != T.mul(x, c) for x in range(T.order)) or T.element_order(c) != n:
        raise ValidationError("commutator is not central of order n", witness=c)
    return E


# ---------------------------------------------------------------------------
# splitting groupoid


@dataclass(frozen=True, eq=False)
class SplittingGroupoid:
    """Objects are fibre points ``(mu, nu)``; ``(y, s, a)`` goes ``y -> s.y``
    carrying the scalar ``zeta^a``.

    ``gal_action`` gives the deck group's action on objects and morphisms.
    """

    data: QuantumTorusData
    groupoid: object
    points: tuple
    morphisms: tuple   # (object, group element, exponent)
    scalars: np.ndarray
    band: Band

    def gal_action(self):
        G = self.data.gal
        index = {m: i for i, m in enumerate(self.morphisms)}
        pidx = {y: i for i, y in enumerate(self.points)}
        oa = [[pidx[self.data.deck(s, y)] for y in self.points] for s in range(G.order)]
        ma = [[index[(oa[s][y], g, a)] for y, g, a in self.morphisms] for s in range(G.order)]
        return oa, ma


def fibre_points(data, base):
    x, y = base
    p, n = data.p, data.n
    mus = [m for m in range(1, p) if pow(m, n, p) == x % p]
    nus = [v for v in range(1, p) if pow(v, n, p) == y % p]
    if not mus or not nus:
        raise InvalidInput(f"base point {base} has an empty fibre")
    return [(m, v) for m in mus for v in nus]


def splitting_groupoid(n, p, lifts=None, base_points=((1, 1),), entry_action=None,
                       scalars=None):
    """The splitting groupoid of projective lifts over the fibres of ``base_points``.

    Composition ``(y, s, a)(s.y, t, b) = (y, st, c(s, t) + a + b)`` where
    ``c`` is the discrepancy table of the lifts; ``scalars`` overrides that
    table directly.  A table that is not a cocycle surfaces as a
    NotAssociative witness from groupoid validation.
    """
    data = quantum_torus_data(n, p)
    G = data.gal
    if scalars is None:
        lifts = data.lifts() if lifts is None else lifts
        if len(lifts) == 2:
            lifts = lift_table(n, p, *lifts)
        _, scalars = _discrepancies(n, p, data.zeta, lifts, entry_action)
    scalars = np.asarray(scalars, dtype=np.int64) % n
    points = []
    for b in base_points:
        points.extend(q for q in fibre_points(data, b) if q not in points)
    pidx = {y: i for i, y in enumerate(points)}
    morphisms = [(y, s, a) for y in range(len(points)) for s in range(G.order) for a in range(n)]
    index = {m: i for i, m in enumerate(morphisms)}

    def target(y, s):
        return pidx[data.deck(s, points[y])]

    src = [y for y, _, _ in morphisms]
    tgt = [target(y, s) for y, s, _ in morphisms]
    k = len(morphisms)
    comp = np.full((k, k), -1, dtype=np.int64)
    for i, (y, s, a) in enumerate(morphisms):
        ty = tgt[i]
        for t in range(G.order):
            for b in range(n):
                c = (scalars[s, t] + a + b) % n
                comp[i, index[(ty, t, b)]] = index[(y, G.mul(s, t), int(c))]
    labels = [f"({mu},{nu})" for mu, nu in points]
    mlabels = [f"{labels[y]}-{G.label(s)}-z^{a}" for y, s, a in morphisms]
    X = validate_groupoid(len(points), src, tgt, comp, object_labels=labels,
                          morphism_labels=mlabels)
    A = AbelianGroup((n,))
    value, morph = {}, {}
    for y in range(len(points)):
        # (y, e, a) -> a + c(e, e) sends the identity to zero
        value[y] = {index[(y, G.identity, a)]: ((a + int(scalars[0, 0])) % n,)
                    for a in range(n)}
        morph[y] = {v: f for f, v in value[y].items()}
    return SplittingGroupoid(data, X, tuple(points), tuple(morphisms), scalars,
                             Band(X, A, value, morph))
