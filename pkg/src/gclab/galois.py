"""Galois-equivariant groupoids and torsors, and their 2-cocycles.

A finite group ``gal`` plays the Galois group; it acts on the objects and
morphisms of a groupoid by groupoid automorphisms, and on the bounding
group ``A`` through a G-module.  The band (the identification of every
automorphism group with ``A``) must intertwine the two actions.

A torsor is not required to carry a Galois action.  Instead each ``sigma``
comes with a transport map ``gamma[sigma]`` of carrier points (anchored
over ``sigma`` of the original anchor).  From a basepoint ``x`` one builds
the semilinear maps ``u_sigma(m . x) = sigma(m) . gamma_sigma(x)``, and the
cocycle is ``h(s, t) = u_s o u_t o u_st^-1`` read as an element of ``A``.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import AbelianGroup, iter_group_isomorphisms
from .caps import check_cap
from .cohomology import Cochain, cohomologous, cohomology_group, is_cocycle
from .errors import (HypothesisFailed, InvalidInput,
                     NonUniqueAutomorphismValue, NotACocycle, NotEquivariant,
                     ValidationError)
from .extensions import extension_from_cocycle
from .groupoid import Band, action_groupoid, groupoid_quotient, is_connected, validate_groupoid
from .morita import validate_morita_morphism
from .torsor import (baer_sum, balanced_pairs, find_torsor_over_quotient,
                     pullback_torsor, pushforward_torsor, regular_torsor)


@dataclass(frozen=True, eq=False)
class GaloisContext:
    gal: object
    coeff: object  # GModule over gal

    def __post_init__(self):
        if self.coeff.group != self.gal:
            raise InvalidInput("coefficient module is over a different group")

    @property
    def A(self):
        return self.coeff.coeffs


@dataclass(frozen=True, eq=False)
class EquivariantGroupoid:
    groupoid: object
    obj_action: tuple  # obj_action[s][x]
    mor_action: tuple  # mor_action[s][m]
    band: Band = None

    def obj(self, s, x):
        return self.obj_action[s][x]

    def mor(self, s, m):
        return self.mor_action[s][m]


@dataclass(frozen=True, eq=False)
class EquivariantTorsor:
    groupoid: EquivariantGroupoid
    torsor: object
    base_action: tuple  # base_action[s][b]
    gamma: tuple        # gamma[s][p]


def _check_action_rows(G, rows, n, what):
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    if len(rows) != G.order:
        raise InvalidInput(f"need one {what} row per Galois element")
    for s, r in enumerate(rows):
        if sorted(r) != list(range(n)):
            raise NotEquivariant(f"{what} of {s} is not a bijection", witness=(s,))
    if rows[G.identity] != tuple(range(n)):
        raise NotEquivariant(f"identity acts nontrivially on {what}", witness=(G.identity,))
    for s in range(G.order):
        for t in range(G.order):
            st = G.mul(s, t)
            if any(rows[st][i] != rows[s][rows[t][i]] for i in range(n)):
                raise NotEquivariant(f"{what}: action of {s}*{t} is not the composite",
                                     witness=(s, t))
    return rows


def _band_compatible(ctx, X, obj_action, mor_action, band):
    M = ctx.coeff
    for s in range(ctx.gal.order):
        for x in range(X.n_objects):
            for f in X.aut(x):
                if band(mor_action[s][f]) != M.act(s, band(f)):
                    return (s, f)
    return None


def find_compatible_band(ctx, X, obj_action, mor_action):
    """A band intertwining the Galois actions, or ``None``.

    Tries every isomorphism ``Aut(root) -> A`` at the root of each class,
    propagated by conjugation.
    """
    from .groupoid import bounded_by

    A = ctx.A
    GA = A.as_group()
    classes = groupoid_quotient(X).classes
    options = []
    for cls in classes:
        r = cls[0]
        autG, ms = X.aut_group(r)
        opts = [{ms[i]: A.element(iso[i]) for i in range(len(ms))}
                for iso in iter_group_isomorphisms(autG, GA)]
        if not opts:
            return None
        options.append(opts)
    check_cap(int(np.prod([len(o) for o in options])), "band choices")
    for choice in product(*options):
        roots = {cls[0]: phi for cls, phi in zip(classes, choice)}
        band = bounded_by(X, A, roots)
        if band is not None and _band_compatible(ctx, X, obj_action, mor_action, band) is None:
            return band
    return None


def validate_equivariant_groupoid(ctx, X, obj_action, mor_action, band=None, theorem=True):
    """Validate Galois actions on a groupoid; with ``theorem`` also check that
    it is connected and bounded by ``A`` through a compatible band."""
    G = ctx.gal
    oa = _check_action_rows(G, obj_action, X.n_objects, "object action")
    ma = _check_action_rows(G, mor_action, X.n_morphisms, "morphism action")
    for s in range(G.order):
        for m in range(X.n_morphisms):
            sm = ma[s][m]
            if X.src[sm] != oa[s][X.src[m]] or X.tgt[sm] != oa[s][X.tgt[m]]:
                raise NotEquivariant("action does not respect source and target",
                                     witness=(s, m))
        for x in range(X.n_objects):
            if ma[s][X.id_of[x]] != X.id_of[oa[s][x]]:
                raise NotEquivariant("action does not preserve identities", witness=(s, x))
        row = np.array(ma[s], dtype=np.int64)
        fs, gs = np.nonzero(X.comp >= 0)
        wrong = row[X.comp[fs, gs]] != X.comp[row[fs], row[gs]]
        if wrong.any():
            i = int(np.argmax(wrong))
            raise NotEquivariant("action does not preserve composition",
                                 witness=(s, int(fs[i]), int(gs[i])))
    if not theorem:
        return EquivariantGroupoid(X, oa, ma, band)
    if not is_connected(X):
        raise HypothesisFailed("connected: groupoid has several classes", witness="connected")
    if not isinstance(ctx.A, AbelianGroup):
        raise HypothesisFailed("abelian: bounding group must be abelian", witness="abelian")
    if band is None:
        band = find_compatible_band(ctx, X, oa, ma)
        if band is None:
            raise HypothesisFailed("bounded: no Galois-compatible identification with A",
                                   witness="bounded")
    else:
        bad = _band_compatible(ctx, X, oa, ma, band)
        if bad is not None:
            raise HypothesisFailed(f"band does not intertwine the actions at {bad}",
                                   witness="bounded")
    return EquivariantGroupoid(X, oa, ma, band)


def validate_equivariant_torsor(ctx, Xe, P, base_action, gamma):
    G = ctx.gal
    ba = _check_action_rows(G, base_action, P.n_base, "base action")
    gm = tuple(tuple(int(v) for v in r) for r in gamma)
    if len(gm) != G.order or any(len(r) != P.size for r in gm):
        raise InvalidInput("need one transport row per Galois element")
    for s in range(G.order):
        for p in range(P.size):
            q = gm[s][p]
            if not 0 <= q < P.size:
                raise InvalidInput("transport value out of range")
            if P.anchor[q] != Xe.obj(s, P.anchor[p]):
                raise NotEquivariant("transport does not move the anchor by the action",
                                     witness=(s, p))
            if P.proj[q] != ba[s][P.proj[p]]:
                raise NotEquivariant("transport does not move the base point by the action",
                                     witness=(s, p))
    return EquivariantTorsor(Xe, P, ba, gm)


def trivial_base_action(G, n_base=1):
    return tuple(tuple(range(n_base)) for _ in range(G.order))


# ---------------------------------------------------------------------------
# cocycle extraction


def semilinear_map(Xe, P, x, q, s):
    """``m . x -> sigma(m) . q`` on the fibre of ``x``."""
    return {p: P.act(Xe.mor(s, P.connecting(x, p)), q) for p in P.fibre(P.proj[x])}


def automorphism_value(Xe, P, x, phi):
    """The ``a`` with ``phi == (p -> t_a . p)`` on the fibre of ``x``."""
    band = Xe.band
    m = P.connecting(x, phi[x]) if P.anchor[phi[x]] == P.anchor[x] else None
    if m is None:
        raise NonUniqueAutomorphismValue("map moves the anchor of the basepoint",
                                         witness=(x,))
    a = band(m)
    for p, v in phi.items():
        if P.act(band.at(P.anchor[p], a), p) != v:
            raise NonUniqueAutomorphismValue(
                f"map is not a band automorphism at point {p}", witness=(p,))
    return a


def transport_family(ctx, Pe, x):
    """The semilinear maps ``u_sigma`` determined by the basepoint ``x``."""
    P = Pe.torsor
    s0 = P.proj[x]
    for s in range(ctx.gal.order):
        if Pe.base_action[s][s0] != s0:
            raise HypothesisFailed("basepoint's base point is not Galois-fixed",
                                   witness="fixed-base")
    return [semilinear_map(Pe.groupoid, P, x, Pe.gamma[s][x], s)
            for s in range(ctx.gal.order)]


def cocycle_from_family(ctx, Xe, P, x, u):
    G = ctx.gal
    N = G.order
    inv = []
    for s in range(N):
        if len(set(u[s].values())) != len(u[s]):
            raise NonUniqueAutomorphismValue("transport map is not a bijection", witness=(s,))
        inv.append({v: p for p, v in u[s].items()})
    vals = np.zeros((N, N, ctx.A.rank), dtype=np.int64)
    for s in range(N):
        for t in range(N):
            st = G.mul(s, t)
            phi = {p: u[s][u[t][inv[st][p]]] for p in u[s]}
            vals[s, t] = automorphism_value(Xe, P, x, phi)
    h = Cochain(ctx.coeff, 2, vals)
    chk = is_cocycle(h)
    if not chk:
        raise NonUniqueAutomorphismValue("extracted table is not a cocycle",
                                         witness=chk.witness)
    return h


def cocycle_from_torsor(ctx, Pe, basepoint=0):
    """The 2-cocycle ``h(s, t) = u_s u_t u_st^-1`` of an equivariant torsor."""
    Xe = Pe.groupoid
    if Xe.band is None:
        raise HypothesisFailed("groupoid has no band", witness="bounded")
    if not is_connected(Xe.groupoid):
        raise HypothesisFailed("connected: groupoid has several classes", witness="connected")
    u = transport_family(ctx, Pe, basepoint)
    return cocycle_from_family(ctx, Xe, Pe.torsor, basepoint, u)


def basepoint_change(ctx, Pe, x, x2):
    """Cocycles at two basepoints of one fibre and the cochain
    ``g(s) = u'_s u_s^-1`` with ``h2 == h + d g``."""
    P, Xe = Pe.torsor, Pe.groupoid
    if P.proj[x] != P.proj[x2]:
        raise InvalidInput("basepoints must lie in one fibre")
    u = transport_family(ctx, Pe, x)
    u2 = transport_family(ctx, Pe, x2)
    h = cocycle_from_family(ctx, Xe, P, x, u)
    h2 = cocycle_from_family(ctx, Xe, P, x, u2)
    N = ctx.gal.order
    vals = np.zeros((N, ctx.A.rank), dtype=np.int64)
    for s in range(N):
        inv = {v: p for p, v in u[s].items()}
        phi = {p: u2[s][inv[p]] for p in u[s]}
        vals[s] = automorphism_value(Xe, P, x, phi)
    return h, h2, Cochain(ctx.coeff, 1, vals)


# ---------------------------------------------------------------------------
# groupoid from a cocycle


@dataclass(frozen=True, eq=False)
class CocycleGroupoid:
    """Action groupoid of the extension on the Galois group, with its torsor."""

    extension: object
    groupoid: EquivariantGroupoid
    torsor: EquivariantTorsor
    coords: dict     # (g, g', a) -> morphism index of [a]_{g, g'}
    basepoint: int


def groupoid_from_cocycle(ctx, beta):
    """Build the equivariant groupoid and torsor whose cocycle is ``beta``.

    Morphisms ``g -> g'`` are written ``[a]`` where the extension element is
    ``s(g') k(a) s(g)^-1`` for the canonical section ``s``; Galois elements
    act by ``[a] -> [sigma a + beta(sigma, g') - beta(sigma, g)]``.
    """
    G, M, A = ctx.gal, ctx.coeff, ctx.A
    chk = is_cocycle(beta)
    if not chk:
        raise NotACocycle("input is not a cocycle", witness=chk.witness)
    E = extension_from_cocycle(M, beta)
    T = E.total
    N = G.order
    action = [[G.mul(E.projection(g), x) for x in range(N)] for g in range(T.order)]
    X = action_groupoid(T, action, [G.label(x) for x in range(N)])
    s = E.canonical_section()
    coords, back = {}, {}
    for x in range(N):
        for y in range(N):
            for a in A.elements:
                g = T.prod(s(y), E.k(a), T.inv(s(x)))
                m = g * N + x
                coords[(x, y, a)] = m
                back[m] = (x, y, a)

    def b(sig, x):
        return tuple(int(v) for v in beta.values[sig, x])

    oa = [[G.mul(sig, x) for x in range(N)] for sig in range(N)]
    ma = []
    for sig in range(N):
        row = [None] * X.n_morphisms
        for m, (x, y, a) in back.items():
            na = A.sub(A.add(M.act(sig, a), b(sig, y)), b(sig, x))
            row[m] = coords[(G.mul(sig, x), G.mul(sig, y), na)]
        ma.append(row)
    value, morphism = {}, {}
    for x in range(N):
        value[x] = {coords[(x, x, a)]: a for a in A.elements}
        morphism[x] = {a: coords[(x, x, a)] for a in A.elements}
    band = Band(X, A, value, morphism)
    Xe = validate_equivariant_groupoid(ctx, X, oa, ma, band)
    e = G.identity
    P = regular_torsor(X, root=e)
    pts = [m for m in range(X.n_morphisms) if X.src[m] == e]
    pidx = {m: i for i, m in enumerate(pts)}
    gamma = []
    for sig in range(N):
        row = []
        for m in pts:
            _, y, a = back[m]
            row.append(pidx[coords[(e, G.mul(sig, y), A.add(M.act(sig, a), b(sig, y)))]])
        gamma.append(row)
    Pe = validate_equivariant_torsor(ctx, Xe, P, trivial_base_action(G), gamma)
    return CocycleGroupoid(E, Xe, Pe, coords, pidx[X.id_of[e]])


# ---------------------------------------------------------------------------
# eliminability


def canonical_torsor(ctx, Xe, root=0):
    """``Mor(root, -)`` over a point with transport ``p -> c_sigma ; sigma(p)``,
    where ``c_sigma`` is the first morphism ``root -> sigma(root)``."""
    X = Xe.groupoid
    P = regular_torsor(X, root)
    pts = [m for m in range(X.n_morphisms) if X.src[m] == root]
    pidx = {m: i for i, m in enumerate(pts)}
    gamma = []
    for s in range(ctx.gal.order):
        c = X.hom(root, Xe.obj(s, root))[0]
        gamma.append([pidx[X.compose(c, Xe.mor(s, m))] for m in pts])
    return validate_equivariant_torsor(ctx, Xe, P, trivial_base_action(ctx.gal), gamma)


def invariant_structures(ctx, Xe, P, x):
    """Yield genuine Galois actions on the fibre of ``x`` by semilinear maps.

    Each is given by the images ``q[sigma]`` of ``x``; the search is
    exhaustive over all anchor-compatible choices, pruned by
    ``u_s(q[t]) == q[st]``.
    """
    G = ctx.gal
    N = G.order
    fib = P.fibre(P.proj[x])
    cands = [[q for q in fib if P.anchor[q] == Xe.obj(s, P.anchor[x])] for s in range(N)]
    total = 1
    for c in cands:
        total *= len(c)
    check_cap(total, "semilinear family search")
    order = list(range(N))
    q = [None] * N
    conn = {p: P.connecting(x, p) for p in fib}

    def u_at(s, p):
        return P.act(Xe.mor(s, conn[p]), q[s])

    def consistent(k):
        done = order[: k + 1]
        for s in done:
            for t in done:
                st = G.mul(s, t)
                if q[st] is not None and u_at(s, q[t]) != q[st]:
                    return False
        return True

    def search(k):
        if k == N:
            yield list(q)
            return
        s = order[k]
        for c in cands[s]:
            q[s] = c
            if consistent(k):
                yield from search(k + 1)
            q[s] = None

    yield from search(0)


@dataclass
class EliminabilityVerdict:
    eliminable: bool
    cocycle: Cochain
    class_coords: tuple
    invariant_factors: list
    coboundary: Cochain = None
    invariant_torsor: object = None
    search_agrees: bool = None

    def describe(self):
        coords = ",".join(map(str, self.class_coords))
        kind = "trivial" if not any(self.class_coords) else "nontrivial"
        word = "eliminable" if self.eliminable else "NOT eliminable"
        return f"class = ({coords}) {kind}; {word}"


def is_eliminable(ctx, Xe, search=True):
    """Decide eliminability by the class of the canonical torsor and, when
    ``search`` is set, by an exhaustive search for a Galois-invariant torsor
    over the quotient.  The two answers must agree."""
    X = Xe.groupoid
    if Xe.band is None or not is_connected(X):
        raise HypothesisFailed("connected and bounded groupoid required", witness="connected")
    Pe = canonical_torsor(ctx, Xe, 0)
    h = cocycle_from_torsor(ctx, Pe, 0)
    H = cohomology_group(ctx.coeff, 2)
    coords = H.class_of(h)
    trivial = not any(coords)
    g = cohomologous(h, Cochain.zero(ctx.coeff, 2)) if trivial else None
    verdict = EliminabilityVerdict(trivial, h, coords, H.invariant_factors, g)
    if not search:
        return verdict

    def constraint(P):
        x = 0
        for fam in invariant_structures(ctx, Xe, P, x):
            u = [semilinear_map(Xe, P, x, fam[s], s) for s in range(ctx.gal.order)]
            gamma = [[u[s][p] for p in range(P.size)] for s in range(ctx.gal.order)]
            return validate_equivariant_torsor(ctx, Xe, P, trivial_base_action(ctx.gal),
                                               gamma)
        return None

    found = find_torsor_over_quotient(X, constraint)
    verdict.search_agrees = (found is not None) == trivial
    if found is not None:
        verdict.invariant_torsor = found[1]
    if not verdict.search_agrees:
        raise ValidationError("class test and invariant-torsor search disagree")
    return verdict


# ---------------------------------------------------------------------------
# transport along equivariant Morita morphisms


def inflate_equivariant(ctx, Xe, copies):
    """``copies`` indexed copies of every object; ``(m, i, j): (x, i) -> (y, j)``.

    Returns the inflated equivariant groupoid and the collapse morphism onto ``Xe``.
    """
    X = Xe.groupoid
    k = copies
    n0 = X.n_objects * k
    mors = [(m, i, j) for m in range(X.n_morphisms) for i in range(k) for j in range(k)]
    idx = {v: n for n, v in enumerate(mors)}
    src = [X.src[m] * k + i for m, i, j in mors]
    tgt = [X.tgt[m] * k + j for m, i, j in mors]
    comp = np.full((len(mors), len(mors)), -1, dtype=np.int64)
    for a, (m, i, j) in enumerate(mors):
        for m2 in np.nonzero(X.comp[m] >= 0)[0]:
            for l in range(k):
                comp[a, idx[(int(m2), j, l)]] = idx[(int(X.comp[m, m2]), i, l)]
    inv = [idx[(X.inv[m], j, i)] for m, i, j in mors]
    ids = [idx[(X.id_of[x], i, i)] for x in range(X.n_objects) for i in range(k)]
    Y = validate_groupoid(n0, src, tgt, comp, inv, ids)
    oa = [[Xe.obj(s, x) * k + i for x in range(X.n_objects) for i in range(k)]
          for s in range(ctx.gal.order)]
    ma = [[idx[(Xe.mor(s, m), i, j)] for m, i, j in mors] for s in range(ctx.gal.order)]
    value, morphism = {}, {}
    for x in range(X.n_objects):
        for i in range(k):
            o = x * k + i
            value[o] = {idx[(m, i, i)]: a for m, a in Xe.band.value[x].items()}
            morphism[o] = {a: f for f, a in value[o].items()}
    Ye = validate_equivariant_groupoid(ctx, Y, oa, ma, Band(Y, ctx.A, value, morphism))
    F = validate_morita_morphism(Y, X, [x for x in range(X.n_objects) for _ in range(k)],
                                 [m for m, _, _ in mors])
    return Ye, F


def pullback_equivariant(ctx, Xe_source, F, Pe):
    """Pull an equivariant torsor back along an equivariant Morita morphism."""
    _check_equivariant_functor(ctx, Xe_source, Pe.groupoid, F)
    P2 = pullback_torsor(F, Pe.torsor)
    pts = [(x, p) for x in range(F.source.n_objects) for p in range(Pe.torsor.size)
           if F.f0[x] == Pe.torsor.anchor[p]]
    index = {v: i for i, v in enumerate(pts)}
    gamma = [[index[(Xe_source.obj(s, x), Pe.gamma[s][p])] for x, p in pts]
             for s in range(ctx.gal.order)]
    return validate_equivariant_torsor(ctx, Xe_source, P2, Pe.base_action, gamma)


def pushforward_equivariant(ctx, Ye_target, F, Pe, basepoint=0):
    """Push an equivariant torsor forward; transport uses the semilinear family
    of ``basepoint`` so that it descends to the balanced product."""
    _check_equivariant_functor(ctx, Pe.groupoid, Ye_target, F)
    P, Y = Pe.torsor, F.target
    u = transport_family(ctx, Pe, basepoint)
    if P.n_base != 1:
        raise InvalidInput("pushforward transport is implemented over a one-point base")
    Q = pushforward_torsor(F, P)
    raw, of = balanced_pairs(F, P)
    rindex = {v: i for i, v in enumerate(raw)}
    gamma = []
    for s in range(ctx.gal.order):
        row = [None] * Q.size
        for (p, n), c in zip(raw, of):
            r = of[rindex[(u[s][p], Ye_target.mor(s, n))]]
            if row[c] is not None and row[c] != r:
                raise ValidationError("transport does not descend to the balanced product",
                                      witness=(s, p, n))
            row[c] = r
        gamma.append(row)
    base_point = of[rindex[(basepoint, Y.id_of[F.f0[P.anchor[basepoint]]])]]
    return validate_equivariant_torsor(ctx, Ye_target, Q, Pe.base_action, gamma), base_point


def _check_equivariant_functor(ctx, Xe, Ye, F):
    for s in range(ctx.gal.order):
        for x in range(F.source.n_objects):
            if F.f0[Xe.obj(s, x)] != Ye.obj(s, F.f0[x]):
                raise NotEquivariant("functor does not commute with the action on objects",
                                     witness=(s, x))
        for m in range(F.source.n_morphisms):
            if F.f1[Xe.mor(s, m)] != Ye.mor(s, F.f1[m]):
                raise NotEquivariant("functor does not commute with the action on morphisms",
                                     witness=(s, m))
    for x in range(F.source.n_objects):
        for f in F.source.aut(x):
            if Xe.band(f) != Ye.band(F.f1[f]):
                raise NotEquivariant("functor does not preserve band values", witness=(f,))


@dataclass
class MoritaInvarianceReport:
    source_cocycle: Cochain
    target_cocycle: Cochain

    @property
    def equal(self):
        return self.source_cocycle == self.target_cocycle


def morita_class_invariance(ctx, Xe_source, F, Pe, basepoint=0):
    """Extract the cocycle of ``Pe`` and of its pullback along ``F``; they agree exactly."""
    h_target = cocycle_from_torsor(ctx, Pe, basepoint)
    Pb = pullback_equivariant(ctx, Xe_source, F, Pe)
    pts = [(x, p) for x in range(F.source.n_objects) for p in range(Pe.torsor.size)
           if F.f0[x] == Pe.torsor.anchor[p]]
    x0 = next(x for x in range(F.source.n_objects) if F.f0[x] == Pe.torsor.anchor[basepoint])
    h_source = cocycle_from_torsor(ctx, Pb, pts.index((x0, basepoint)))
    return MoritaInvarianceReport(h_source, h_target)


# ---------------------------------------------------------------------------
# Baer sums


@dataclass(frozen=True, eq=False)
class EquivariantBaerSum:
    torsor: EquivariantTorsor
    basepoint: int
    plain: object  # the underlying BaerSum


def equivariant_baer_sum(ctx, Pe, Qe, x=0, y=0):
    """Baer sum with transport ``[(p, q)] -> [(u_s p, u'_s q)]`` built from the
    basepoints ``x`` and ``y``; its cocycle is the sum of the two cocycles."""
    Xe, Ye = Pe.groupoid, Qe.groupoid
    A = ctx.A
    B = baer_sum(Pe.torsor, Qe.torsor, A, Xe.band, Ye.band)
    C = B.contracted
    W = C.groupoid
    G = ctx.gal
    oa = [[C.obj[(Xe.obj(s, a), Ye.obj(s, b))] for (a, b) in sorted(C.obj, key=C.obj.get)]
          for s in range(G.order)]
    ma = []
    for s in range(G.order):
        row = [None] * W.n_morphisms
        for (m, n), w in C.mor.items():
            row[w] = C.mor[(Xe.mor(s, m), Ye.mor(s, n))]
        ma.append(row)
    We = validate_equivariant_groupoid(ctx, W, oa, ma, C.band)
    u = transport_family(ctx, Pe, x)
    v = transport_family(ctx, Qe, y)
    T = B.torsor
    gamma = []
    for s in range(G.order):
        row = [None] * T.size
        for (p, q), c in B.point.items():
            if p in u[s] and q in v[s]:
                r = B.point[(u[s][p], v[s][q])]
                if row[c] is not None and row[c] != r:
                    raise ValidationError("transport does not descend to the Baer sum",
                                          witness=(s, p, q))
                row[c] = r
        gamma.append(row)
    if any(r is None for row in gamma for r in row):
        raise InvalidInput("Baer sum transport is only defined over the basepoint fibres")
    Se = validate_equivariant_torsor(ctx, We, T, Pe.base_action, gamma)
    return EquivariantBaerSum(Se, B.point[(x, y)], B)


def trivial_equivariant_torsor(ctx):
    """The one-object groupoid on ``A`` with its regular torsor; cocycle zero."""
    from .groupoid import groupoid_from_group

    A, M = ctx.A, ctx.coeff
    X = groupoid_from_group(A.as_group())
    G = ctx.gal
    oa = [[0] for _ in range(G.order)]
    ma = [[A.index(M.act(s, a)) for a in A.elements] for s in range(G.order)]
    value = {0: {i: a for i, a in enumerate(A.elements)}}
    band = Band(X, A, value, {0: {a: i for i, a in enumerate(A.elements)}})
    Xe = validate_equivariant_groupoid(ctx, X, oa, ma, band)
    P = regular_torsor(X, 0)
    pts = list(range(X.n_morphisms))
    gamma = [[ma[s][m] for m in pts] for s in range(G.order)]
    return validate_equivariant_torsor(ctx, Xe, P, trivial_base_action(G), gamma)
