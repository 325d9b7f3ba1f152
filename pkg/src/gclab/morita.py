"""Morita morphisms, bitorsors and the linking groupoid.

A bitorsor ``Q`` between ``X`` and ``Y`` is pictured as a set of arrows
``q: aX(q) -> aY(q)``.  ``X`` acts by precomposition (``left(f, q) = f;q``,
defined when ``tgt(f) == aX(q)``) and ``Y`` by postcomposition
(``right(q, g) = q;g``, defined when ``src(g) == aY(q)``).
"""

from dataclasses import dataclass

import numpy as np

from .algebra import find_group_isomorphism
from .errors import (BadComposability, CompositionIncoherent,
                     InvalidInput, NotFullyFaithful, NotFunctorial,
                     NotHomogeneous, NotPrincipal, NotSurjectiveOnObjects,
                     ValidationError)
from .groupoid import groupoid_quotient, path_from, spanning_tree, validate_groupoid


@dataclass(frozen=True, eq=False)
class Functor:
    source: object
    target: object
    f0: tuple
    f1: tuple


class MoritaMorphism(Functor):
    """A fully faithful functor that is surjective on objects."""


def validate_functor(X, Y, f0, f1, fully_faithful=True):
    f0 = tuple(int(v) for v in f0)
    f1 = tuple(int(v) for v in f1)
    if len(f0) != X.n_objects or len(f1) != X.n_morphisms:
        raise InvalidInput("object and morphism maps must cover the source")
    if any(not 0 <= v < Y.n_objects for v in f0) or any(not 0 <= v < Y.n_morphisms for v in f1):
        raise InvalidInput("functor value out of range")
    for f in range(X.n_morphisms):
        if Y.src[f1[f]] != f0[X.src[f]] or Y.tgt[f1[f]] != f0[X.tgt[f]]:
            raise NotFunctorial(f"morphism {f} is sent to the wrong endpoints", witness=(f,))
    for x in range(X.n_objects):
        if f1[X.id_of[x]] != Y.id_of[f0[x]]:
            raise NotFunctorial(f"identity of {x} is not preserved", witness=(x,))
    for f in range(X.n_morphisms):
        for g in np.nonzero(X.comp[f] >= 0)[0]:
            g = int(g)
            if f1[X.compose(f, g)] != Y.compose(f1[f], f1[g]):
                raise NotFunctorial(f"composite of {f} and {g} is not preserved",
                                    witness=(f, g))
    if fully_faithful:
        for x in range(X.n_objects):
            for y in range(X.n_objects):
                img = sorted(f1[m] for m in X.hom(x, y))
                if img != sorted(Y.hom(f0[x], f0[y])) or len(set(img)) != len(img):
                    raise NotFullyFaithful(
                        f"Mor({x},{y}) does not map bijectively onto Mor({f0[x]},{f0[y]})",
                        witness=(x, y))
    return Functor(X, Y, f0, f1)


def validate_morita_morphism(X, Y, f0, f1):
    F = validate_functor(X, Y, f0, f1, fully_faithful=False)
    missed = sorted(set(range(Y.n_objects)) - set(F.f0))
    if missed:
        raise NotSurjectiveOnObjects(f"object {missed[0]} is not hit", witness=missed[0])
    F = validate_functor(X, Y, f0, f1, fully_faithful=True)
    return MoritaMorphism(X, Y, F.f0, F.f1)


def identity_morphism(X):
    return MoritaMorphism(X, X, tuple(range(X.n_objects)), tuple(range(X.n_morphisms)))


def quotient_bijection(F):
    """The induced map of groupoid quotients; raises unless it is a bijection."""
    qx, qy = groupoid_quotient(F.source), groupoid_quotient(F.target)
    m = {}
    for i, cls in enumerate(qx.classes):
        images = {qy.projection[F.f0[x]] for x in cls}
        if len(images) != 1:
            raise ValidationError("functor splits a quotient class", witness=i)
        m[i] = images.pop()
    if sorted(m.values()) != list(range(len(qy))):
        raise ValidationError("induced quotient map is not a bijection")
    return m


@dataclass(frozen=True, eq=False)
class Bitorsor:
    X: object
    Y: object
    aX: tuple
    aY: tuple
    left: np.ndarray   # left[f, q] or -1
    right: np.ndarray  # right[q, g] or -1
    labels: tuple = None

    @property
    def size(self):
        return len(self.aX)

    def act_left(self, f, q):
        r = int(self.left[f, q])
        if r < 0:
            raise BadComposability(f"{f} cannot act on {q}", witness=(f, q))
        return r

    def act_right(self, q, g):
        r = int(self.right[q, g])
        if r < 0:
            raise BadComposability(f"{g} cannot act on {q}", witness=(q, g))
        return r


def _principal(n, fibre_key, movers, act, what):
    """Every two points with equal ``fibre_key`` are joined by exactly one mover."""
    hits = {}
    for p in range(n):
        for m in movers(p):
            r = act(m, p)
            hits.setdefault((p, r), []).append(m)
    for p in range(n):
        for r in range(n):
            if fibre_key(p) != fibre_key(r):
                continue
            ms = hits.get((p, r), [])
            if not ms:
                raise NotHomogeneous(f"no {what} morphism joins {p} and {r}", witness=(p, r))
            if len(ms) > 1:
                raise NotPrincipal(f"{len(ms)} {what} morphisms join {p} and {r}",
                                   witness=(p, r))


def validate_bitorsor(X, Y, aX, aY, left, right, labels=None):
    aX = tuple(int(v) for v in aX)
    aY = tuple(int(v) for v in aY)
    n = len(aX)
    L = np.asarray(left, dtype=np.int64).reshape(X.n_morphisms, n)
    R = np.asarray(right, dtype=np.int64).reshape(n, Y.n_morphisms)
    for f in range(X.n_morphisms):
        for q in range(n):
            ok = X.tgt[f] == aX[q]
            r = int(L[f, q])
            if ok != (r >= 0):
                raise BadComposability(f"left action of {f} on {q} wrongly (un)defined",
                                       witness=(f, q))
            if ok and (aX[r] != X.src[f] or aY[r] != aY[q]):
                raise ValidationError("left action moves the wrong anchor", witness=(f, q))
    for q in range(n):
        for g in range(Y.n_morphisms):
            ok = Y.src[g] == aY[q]
            r = int(R[q, g])
            if ok != (r >= 0):
                raise BadComposability(f"right action of {g} on {q} wrongly (un)defined",
                                       witness=(q, g))
            if ok and (aY[r] != Y.tgt[g] or aX[r] != aX[q]):
                raise ValidationError("right action moves the wrong anchor", witness=(q, g))
    for q in range(n):
        if L[X.id_of[aX[q]], q] != q or R[q, Y.id_of[aY[q]]] != q:
            raise ValidationError("identities do not act trivially", witness=(q,))
    for f in range(X.n_morphisms):
        for f2 in np.nonzero(X.comp[f] >= 0)[0]:
            ff = X.comp[f, f2]
            for q in np.nonzero(L[f2] >= 0)[0]:
                if L[ff, q] != L[f, L[f2, q]]:
                    raise ValidationError("left action is not compatible with composition",
                                          witness=(f, int(f2), int(q)))
    for g in range(Y.n_morphisms):
        for g2 in np.nonzero(Y.comp[g] >= 0)[0]:
            gg = Y.comp[g, g2]
            for q in np.nonzero(R[:, g] >= 0)[0]:
                if R[q, gg] != R[R[q, g], g2]:
                    raise ValidationError("right action is not compatible with composition",
                                          witness=(int(q), g, int(g2)))
    for f in range(X.n_morphisms):
        for q in np.nonzero(L[f] >= 0)[0]:
            for g in np.nonzero(R[q] >= 0)[0]:
                if L[f, R[q, g]] != R[L[f, q], g]:
                    raise ValidationError("left and right actions do not commute",
                                          witness=(f, int(q), int(g)))
    for x in range(X.n_objects):
        if x not in aX:
            raise NotHomogeneous(f"no point anchored at object {x} of the left groupoid",
                                 witness=("left", x))
    for y in range(Y.n_objects):
        if y not in aY:
            raise NotHomogeneous(f"no point anchored at object {y} of the right groupoid",
                                 witness=("right", y))
    _principal(n, lambda q: aY[q],
               lambda q: [f for f in range(X.n_morphisms) if X.tgt[f] == aX[q]],
               lambda f, q: int(L[f, q]), "left")
    _principal(n, lambda q: aX[q], lambda q: [g for g in range(Y.n_morphisms)
                                            if Y.src[g] == aY[q]],
               lambda g, q: int(R[q, g]), "right")
    L.flags.writeable = False
    R.flags.writeable = False
    return Bitorsor(X, Y, aX, aY, L, R, tuple(labels) if labels else None)


def bitorsor_from_morphism(F):
    """``Q = {(x, m) : src(m) == f0(x)}`` with actions by composition."""
    X, Y = F.source, F.target
    pts = [(x, m) for x in range(X.n_objects) for m in range(Y.n_morphisms)
           if Y.src[m] == F.f0[x]]
    index = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    L = np.full((X.n_morphisms, n), -1, dtype=np.int64)
    R = np.full((n, Y.n_morphisms), -1, dtype=np.int64)
    for i, (x, m) in enumerate(pts):
        for g in range(Y.n_morphisms):
            if Y.src[g] == Y.tgt[m]:
                R[i, g] = index[(x, Y.compose(m, g))]
        for f in range(X.n_morphisms):
            if X.tgt[f] == x:
                L[f, i] = index[(X.src[f], Y.compose(F.f1[f], m))]
    return validate_bitorsor(X, Y, [p[0] for p in pts], [Y.tgt[p[1]] for p in pts], L, R,
                             [f"{x}|{m}" for x, m in pts])


@dataclass(frozen=True, eq=False)
class LinkingGroupoid:
    groupoid: object
    embed_left: Functor
    embed_right: Functor


def linking_groupoid(B):
    """Groupoid on ``X0 + Y0`` with arrows ``X1 + Q + Q^-1 + Y1``."""
    X, Y = B.X, B.Y
    nx0, nx1, nq = X.n_objects, X.n_morphisms, B.size
    oq, oqi, oy = nx1, nx1 + nq, nx1 + 2 * nq
    n = oy + Y.n_morphisms
    src = list(X.src) + list(B.aX) + [nx0 + y for y in B.aY] + [nx0 + s for s in Y.src]
    tgt = list(X.tgt) + [nx0 + y for y in B.aY] + list(B.aX) + [nx0 + t for t in Y.tgt]
    comp = np.full((n, n), -1, dtype=np.int64)
    comp[:nx1, :nx1] = np.where(X.comp >= 0, X.comp, -1)
    comp[oy:, oy:] = np.where(Y.comp >= 0, Y.comp + oy, -1)
    L, R = B.left, B.right
    # X;Q and Q;Y
    comp[:nx1, oq:oqi] = np.where(L >= 0, L + oq, -1)
    comp[oq:oqi, oy:] = np.where(R >= 0, R + oq, -1)
    # Q^-1;X and Y;Q^-1
    for q in range(nq):
        for f in range(nx1):
            if X.src[f] == B.aX[q]:
                comp[oqi + q, f] = oqi + L[X.inv[f], q]
        for g in range(Y.n_morphisms):
            if Y.tgt[g] == B.aY[q]:
                comp[oy + g, oqi + q] = oqi + R[q, Y.inv[g]]
    # Q;Q^-1 lands in X, Q^-1;Q lands in Y
    for q2 in range(nq):
        for f in range(nx1):
            if X.tgt[f] == B.aX[q2]:
                q = L[f, q2]
                comp[oq + q, oqi + q2] = f
    for q in range(nq):
        for g in range(Y.n_morphisms):
            if Y.src[g] == B.aY[q]:
                comp[oqi + q, oq + R[q, g]] = oy + g
    inv = (list(X.inv) + [oqi + q for q in range(nq)] + [oq + q for q in range(nq)]
           + [oy + g for g in Y.inv])
    ids = list(X.id_of) + [oy + i for i in Y.id_of]
    try:
        W = validate_groupoid(nx0 + Y.n_objects, src, tgt, comp, inv, ids)
    except ValidationError as exc:
        raise CompositionIncoherent(f"bitorsor does not induce a groupoid: {exc}",
                                    witness=exc.witness) from None
    eX = validate_functor(X, W, range(nx0), range(nx1))
    eY = validate_functor(Y, W, [nx0 + y for y in range(Y.n_objects)],
                          [oy + g for g in range(Y.n_morphisms)])
    qW = groupoid_quotient(W)
    for F in (eX, eY):
        hit = {qW.projection[v] for v in F.f0}
        if len(hit) != len(qW):
            raise CompositionIncoherent("an embedding misses an isomorphism class")
    return LinkingGroupoid(W, eX, eY)


def _aut_iso(X, rx, Y, ry):
    GX, msX = X.aut_group(rx)
    GY, msY = Y.aut_group(ry)
    iso = find_group_isomorphism(GX, GY)
    if iso is None:
        return None
    return {msX[i]: msY[iso[i]] for i in range(len(msX))}


def are_morita_equivalent(X, Y):
    """A certifying bitorsor between ``X`` and ``Y``, or ``None``.

    Quotient classes are matched by backtracking in lexicographic order,
    requiring isomorphic automorphism groups at the base objects.
    """
    qX, qY = groupoid_quotient(X), groupoid_quotient(Y)
    if len(qX) != len(qY):
        return None
    baseX = [c[0] for c in qX.classes]
    baseY = [c[0] for c in qY.classes]
    cache = {}

    def iso(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = _aut_iso(X, baseX[i], Y, baseY[j])
        return cache[(i, j)]

    k = len(qX)
    match = [None] * k

    def search(i, used):
        if i == k:
            return True
        for j in range(k):
            if j in used or iso(i, j) is None:
                continue
            match[i] = j
            if search(i + 1, used | {j}):
                return True
        return False

    if not search(0, frozenset()):
        return None
    pts = []
    paths = {}
    for i, cls in enumerate(qX.classes):
        tree = spanning_tree(X, baseX[i])
        for x in cls:
            paths[x] = path_from(X, tree, x)
        for x in cls:
            for b in range(Y.n_morphisms):
                if Y.src[b] == baseY[match[i]]:
                    pts.append((x, b))
    index = {p: n for n, p in enumerate(pts)}
    cls_of = qX.projection
    n = len(pts)
    L = np.full((X.n_morphisms, n), -1, dtype=np.int64)
    R = np.full((n, Y.n_morphisms), -1, dtype=np.int64)
    for q, (x, b) in enumerate(pts):
        for g in range(Y.n_morphisms):
            if Y.src[g] == Y.tgt[b]:
                R[q, g] = index[(x, Y.compose(b, g))]
        phi = iso(cls_of[x], match[cls_of[x]])
        for f in range(X.n_morphisms):
            if X.tgt[f] == x:
                x2 = X.src[f]
                t = X.chain(paths[x2], f, X.inv[paths[x]])
                L[f, q] = index[(x2, Y.compose(phi[t], b))]
    return validate_bitorsor(X, Y, [p[0] for p in pts], [Y.tgt[p[1]] for p in pts], L, R,
                             [f"{x}|{b}" for x, b in pts])
