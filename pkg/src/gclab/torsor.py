"""Groupoid torsors.

A point ``p`` of a torsor is pictured as an arrow ending at ``anchor(p)``.
A morphism ``m`` acts on ``p`` when ``src(m) == anchor(p)``, producing a
point anchored at ``tgt(m)``; acting by ``m1;m2`` is acting by ``m1`` and
then by ``m2``.  Principality: two points over the same base point are
joined by exactly one morphism.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import AbelianGroup
from .caps import MAX_TORSOR_SIZE, check_cap
from .errors import (AnchorMismatch, CapExceeded, IncompatibleBases,
                     InvalidInput, NotAbelian, NotBounded, NotConnected,
                     NotHomogeneous, NotPrincipal, QuotientIllDefined,
                     ValidationError)
from .groupoid import Band, bounded_by, groupoid_quotient, is_connected, validate_groupoid


@dataclass(frozen=True, eq=False)
class GroupoidTorsor:
    groupoid: object
    n_base: int
    proj: tuple
    anchor: tuple
    action: np.ndarray  # action[m, p] or -1
    between: dict       # (p, q) -> the unique m acting p to q
    labels: tuple = None

    @property
    def size(self):
        return len(self.proj)

    def act(self, m, p):
        r = int(self.action[m, p])
        if r < 0:
            raise AnchorMismatch(f"morphism {m} cannot act on point {p}", witness=(m, p))
        return r

    def fibre(self, s):
        return [p for p in range(self.size) if self.proj[p] == s]

    def connecting(self, p, q):
        """The unique morphism taking ``p`` to ``q``."""
        return self.between[(p, q)]

    def label(self, p):
        return self.labels[p] if self.labels else str(p)

    def __repr__(self):
        return f"GroupoidTorsor(points={self.size}, base={self.n_base})"


def validate_torsor(X, n_base, proj, anchor, action, labels=None):
    proj = tuple(int(v) for v in proj)
    anchor = tuple(int(v) for v in anchor)
    n = len(proj)
    if len(anchor) != n:
        raise InvalidInput("proj and anchor must have equal length")
    if any(not 0 <= s < n_base for s in proj):
        raise InvalidInput("base index out of range")
    if any(not 0 <= a < X.n_objects for a in anchor):
        raise InvalidInput("anchor out of range")
    act = np.asarray(action, dtype=np.int64).reshape(X.n_morphisms, n)
    for m in range(X.n_morphisms):
        for p in range(n):
            r = int(act[m, p])
            ok = X.src[m] == anchor[p]
            if ok != (r >= 0):
                raise AnchorMismatch(f"action of {m} on {p} is wrongly (un)defined",
                                     witness=(m, p))
            if ok and (anchor[r] != X.tgt[m] or proj[r] != proj[p]):
                raise AnchorMismatch(f"action of {m} on {p} moves anchor or base wrongly",
                                     witness=(m, p))
    for p in range(n):
        if act[X.id_of[anchor[p]], p] != p:
            raise AnchorMismatch(f"identity moves point {p}", witness=(p,))
    fs, gs = np.nonzero(X.comp >= 0)
    src = np.array(X.src)
    anc = np.array(anchor, dtype=np.int64)
    bad = []
    for x in range(X.n_objects):
        sel = src[fs] == x
        ps = np.nonzero(anc == x)[0]
        if not sel.any() or not len(ps):
            continue
        f_, g_ = fs[sel][:, None], gs[sel][:, None]
        lhs = act[X.comp[f_, g_], ps[None, :]]
        rhs = act[g_, act[f_, ps[None, :]]]
        for i, j in np.argwhere(lhs != rhs):
            bad.append((int(f_[i, 0]), int(g_[i, 0]), int(ps[j])))
    if bad:
        raise AnchorMismatch("action is not compatible with composition", witness=min(bad))
    for s in range(n_base):
        if s not in proj:
            raise NotHomogeneous(f"fibre over base point {s} is empty", witness=(s,))
    hits = {}
    for p in range(n):
        for m in np.nonzero(act[:, p] >= 0)[0]:
            hits.setdefault((p, int(act[m, p])), []).append(int(m))
    between = {}
    for p in range(n):
        for q in range(n):
            if proj[p] != proj[q]:
                continue
            ms = hits.get((p, q), [])
            if not ms:
                raise NotHomogeneous(f"no morphism takes {p} to {q}", witness=(p, q))
            if len(ms) > 1:
                raise NotPrincipal(f"{len(ms)} morphisms take {p} to {q}", witness=(p, q))
            between[(p, q)] = ms[0]
    for (p, q), m in between.items():
        if act[m, p] != q:
            raise NotPrincipal("connecting map is inconsistent", witness=(p, q))
    act.flags.writeable = False
    return GroupoidTorsor(X, n_base, proj, anchor, act, between,
                          tuple(labels) if labels else None)


def torsor_from_points(X, points, proj, n_base):
    """Torsor whose points are morphisms ``points[i]``, acted on by postcomposition."""
    index = {m: i for i, m in enumerate(points)}
    act = np.full((X.n_morphisms, len(points)), -1, dtype=np.int64)
    for i, p in enumerate(points):
        for m in range(X.n_morphisms):
            if X.src[m] == X.tgt[p]:
                act[m, i] = index[X.compose(p, m)]
    return validate_torsor(X, n_base, proj, [X.tgt[p] for p in points], act,
                           [X.morphism_label(p) for p in points])


def regular_torsor(X, root=0):
    """``Mor(root, -)`` over a single base point (X must be connected)."""
    pts = [m for m in range(X.n_morphisms) if X.src[m] == root]
    return torsor_from_points(X, pts, [0] * len(pts), 1)


def tautological_torsor(X):
    """The objects themselves over the quotient, for a groupoid with trivial isotropy."""
    q = groupoid_quotient(X)
    n = X.n_objects
    act = np.full((X.n_morphisms, n), -1, dtype=np.int64)
    for m in range(X.n_morphisms):
        act[m, X.src[m]] = X.tgt[m]
    return validate_torsor(X, len(q), q.projection, range(n), act)


@dataclass(frozen=True, eq=False)
class TorsorMorphism:
    source: GroupoidTorsor
    target: GroupoidTorsor
    map: tuple

    def __call__(self, p):
        return self.map[p]


def validate_torsor_morphism(P, Q, mapping):
    mapping = tuple(int(v) for v in mapping)
    if P.groupoid is not Q.groupoid or P.n_base != Q.n_base:
        raise IncompatibleBases("torsors differ in groupoid or base")
    if len(mapping) != P.size:
        raise InvalidInput("map must have one entry per point")
    for p, q in enumerate(mapping):
        if Q.anchor[q] != P.anchor[p] or Q.proj[q] != P.proj[p]:
            raise AnchorMismatch(f"point {p} sent to a point with another anchor or base",
                                 witness=(p,))
    for m in range(P.groupoid.n_morphisms):
        for p in np.nonzero(P.action[m] >= 0)[0]:
            if mapping[P.action[m, p]] != Q.action[m, mapping[p]]:
                raise ValidationError("map is not equivariant", witness=(m, int(p)))
    return TorsorMorphism(P, Q, mapping)


def _extend_from(P, Q, p0, q0):
    """The equivariant map on the fibre of ``p0`` with ``p0 -> q0``."""
    out = {}
    for p in P.fibre(P.proj[p0]):
        m = P.connecting(p0, p)
        out[p] = int(Q.action[m, q0])
    return out


def find_torsor_isomorphism(P, Q):
    """An isomorphism of torsors ``P -> Q`` over the same groupoid and base, or ``None``."""
    if P.size > MAX_TORSOR_SIZE or Q.size > MAX_TORSOR_SIZE:
        raise CapExceeded(f"torsor isomorphism search is capped at {MAX_TORSOR_SIZE} points")
    if P.groupoid is not Q.groupoid or P.n_base != Q.n_base or P.size != Q.size:
        return None
    mapping = [None] * P.size
    for s in range(P.n_base):
        fib = P.fibre(s)
        p0 = fib[0]
        found = None
        for q0 in Q.fibre(s):
            if Q.anchor[q0] != P.anchor[p0]:
                continue
            cand = _extend_from(P, Q, p0, q0)
            if len(set(cand.values())) == len(fib) == len(Q.fibre(s)):
                found = cand
                break
        if found is None:
            return None
        for p, q in found.items():
            mapping[p] = q
    try:
        return validate_torsor_morphism(P, Q, mapping)
    except ValidationError:
        return None


# ---------------------------------------------------------------------------
# transport along Morita morphisms


def pullback_torsor(F, P):
    """``{(x, p) : f0(x) == anchor(p)}`` with ``m`` acting as ``f1(m)`` on ``p``."""
    X = F.source
    pts = [(x, p) for x in range(X.n_objects) for p in range(P.size)
           if F.f0[x] == P.anchor[p]]
    index = {v: i for i, v in enumerate(pts)}
    act = np.full((X.n_morphisms, len(pts)), -1, dtype=np.int64)
    for i, (x, p) in enumerate(pts):
        for m in range(X.n_morphisms):
            if X.src[m] == x:
                act[m, i] = index[(X.tgt[m], P.act(F.f1[m], p))]
    return validate_torsor(X, P.n_base, [P.proj[p] for _, p in pts], [x for x, _ in pts],
                           act, [f"{x}|{P.label(p)}" for x, p in pts])


def balanced_pairs(F, P):
    """Pairs ``(p, n)`` with ``src(n) == f0(anchor p)`` and their class index
    under ``(m.p, n) ~ (p, f1(m);n)``."""
    X, Y = F.source, F.target
    raw = [(p, n) for p in range(P.size) for n in range(Y.n_morphisms)
           if Y.src[n] == F.f0[P.anchor[p]]]
    rindex = {v: i for i, v in enumerate(raw)}
    parent = list(range(len(raw)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, (p, n) in enumerate(raw):
        for m in range(X.n_morphisms):
            if X.src[m] == P.anchor[p]:
                j = rindex[(P.act(m, p), Y.compose(Y.inv[F.f1[m]], n))]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in range(len(raw))})
    cls = {r: k for k, r in enumerate(roots)}
    return raw, [cls[find(i)] for i in range(len(raw))]


def pushforward_torsor(F, P):
    """Balanced product: pairs ``(p, n)`` with ``src(n) == f0(anchor p)`` modulo
    ``(m.p, n) ~ (p, f1(m);n)``, with ``Y`` acting on ``n``."""
    Y = F.target
    raw, of = balanced_pairs(F, P)
    rindex = {v: i for i, v in enumerate(raw)}
    k = max(of) + 1 if of else 0
    proj = [None] * k
    anchor = [None] * k
    for i, (p, n) in enumerate(raw):
        c = of[i]
        if proj[c] is None:
            proj[c], anchor[c] = P.proj[p], Y.tgt[n]
        elif proj[c] != P.proj[p] or anchor[c] != Y.tgt[n]:
            raise QuotientIllDefined("identified pairs have different base or anchor",
                                     witness=(p, n))
    act = np.full((Y.n_morphisms, k), -1, dtype=np.int64)
    for i, (p, n) in enumerate(raw):
        for g in range(Y.n_morphisms):
            if Y.src[g] == Y.tgt[n]:
                r = of[rindex[(p, Y.compose(n, g))]]
                c = of[i]
                if act[g, c] >= 0 and act[g, c] != r:
                    raise QuotientIllDefined("action does not descend to the quotient",
                                             witness=(g, p, n))
                act[g, c] = r
    rep = {}
    for i, (p, n) in enumerate(raw):
        rep.setdefault(of[i], f"[{P.label(p)}|{n}]")
    return validate_torsor(Y, P.n_base, proj, anchor, act, [rep[c] for c in range(k)])


def torsor_over_quotient(X, roots):
    """``Mor(r, -)`` for one chosen object ``r`` per class, over the quotient."""
    q = groupoid_quotient(X)
    pts, proj = [], []
    for c, r in enumerate(roots):
        if q.projection[r] != c:
            raise InvalidInput(f"object {r} is not in class {c}")
        for m in range(X.n_morphisms):
            if X.src[m] == r:
                pts.append(m)
                proj.append(c)
    return torsor_from_points(X, pts, proj, len(q))


def find_torsor_over_quotient(X, constraint=None):
    """Search for an ``X``-torsor over the groupoid quotient.

    Candidates are the torsors of morphisms out of one chosen object per
    class, in lexicographic order of the choices.  ``constraint`` may reject
    a candidate by returning ``None`` or accept it with extra data (used for
    Galois-equivariant searches); the result is then ``(torsor, data)``.
    """
    q = groupoid_quotient(X)
    total = 1
    for c in q.classes:
        total *= len(c)
    check_cap(total, "anchor choices")
    for roots in product(*q.classes):
        P = torsor_over_quotient(X, roots)
        if constraint is None:
            return P
        data = constraint(P)
        if data is not None:
            return P, data
    return None


# ---------------------------------------------------------------------------
# automorphisms and Baer sums


def _require_band(P, A, band=None):
    X = P.groupoid
    if not is_connected(X):
        raise NotConnected("groupoid is not connected")
    if band is None:
        band = bounded_by(X, A)
        if band is None:
            raise NotBounded(f"groupoid is not bounded by {A!r}")
    return band


def band_automorphism(P, band, a, support=None):
    """``p -> t_a . p`` where ``t_a`` is the automorphism of ``anchor(p)`` with value ``a``.

    With ``support`` (a base point) the map is the identity off that fibre.
    """
    out = []
    for p in range(P.size):
        if support is not None and P.proj[p] != support:
            out.append(p)
        else:
            out.append(P.act(band.at(P.anchor[p], a), p))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class TorsorAutomorphisms:
    torsor: GroupoidTorsor
    band: Band
    basepoint: int
    maps: dict  # element of A -> TorsorMorphism

    def identify(self, mapping):
        """The element of ``A`` corresponding to an automorphism."""
        mapping = tuple(mapping.map if isinstance(mapping, TorsorMorphism) else mapping)
        for a, phi in self.maps.items():
            if phi.map == mapping:
                return a
        raise ValidationError("map is not an automorphism of the basepoint fibre")

    def __len__(self):
        return len(self.maps)


def torsor_automorphisms(P, A, basepoint=0, band=None):
    """Automorphisms of ``P`` supported on the fibre of ``basepoint``, identified with ``A``.

    Every equivariant self-map of the fibre is enumerated and matched with
    the band automorphism of the same value; composition corresponds to
    addition in ``A``.
    """
    band = _require_band(P, A, band)
    if not isinstance(A, AbelianGroup):
        raise NotAbelian("automorphism identification needs an abelian group")
    s = P.proj[basepoint]
    maps = {}
    for a in A.elements:
        maps[a] = validate_torsor_morphism(P, P, band_automorphism(P, band, a, support=s))
    # exhaustive enumeration of equivariant self-maps of the fibre
    found = set()
    fib = P.fibre(s)
    for q0 in fib:
        if P.anchor[q0] != P.anchor[basepoint]:
            continue
        ext = _extend_from(P, P, basepoint, q0)
        full = tuple(ext.get(p, p) for p in range(P.size))
        try:
            validate_torsor_morphism(P, P, full)
        except ValidationError:
            continue
        found.add(full)
    if found != {m.map for m in maps.values()}:
        raise ValidationError("band automorphisms do not exhaust the automorphism group")
    return TorsorAutomorphisms(P, band, basepoint, maps)


@dataclass(frozen=True, eq=False)
class ContractedGroupoid:
    """``X ^A Y``: pairs of objects, pairs of morphisms modulo ``(m t_a, n t_-a)``."""

    groupoid: object
    band: Band
    left: object
    right: object
    obj: dict   # (x, y) -> object index
    mor: dict   # (m, n) -> morphism index
    left_band: Band
    right_band: Band


def contracted_groupoid(X, bX, Y, bY):
    A = bX.group
    if not isinstance(A, AbelianGroup) or bY.group != A:
        raise NotAbelian("contracted products need one abelian bounding group")
    nY0 = Y.n_objects
    obj = {(x, y): x * nY0 + y for x in range(X.n_objects) for y in range(nY0)}
    pairs = [(m, n) for m in range(X.n_morphisms) for n in range(Y.n_morphisms)]
    cls = {}
    reps = []
    for m, n in pairs:
        if (m, n) in cls:
            continue
        orbit = set()
        for a in A.elements:
            ta = bX.at(X.tgt[m], a)
            tb = bY.at(Y.tgt[n], A.neg(a))
            orbit.add((X.compose(m, ta), Y.compose(n, tb)))
        for v in orbit:
            cls[v] = len(reps)
        reps.append(min(orbit))
    k = len(reps)
    src = [obj[(X.src[m], Y.src[n])] for m, n in reps]
    tgt = [obj[(X.tgt[m], Y.tgt[n])] for m, n in reps]
    comp = np.full((k, k), -1, dtype=np.int64)
    leaving = {}
    for j, o in enumerate(src):
        leaving.setdefault(o, []).append(j)
    for i, (m, n) in enumerate(reps):
        for j in leaving.get(tgt[i], ()):
            m2, n2 = reps[j]
            comp[i, j] = cls[(X.compose(m, m2), Y.compose(n, n2))]
    inv = [cls[(X.inv[m], Y.inv[n])] for m, n in reps]
    ids = [cls[(X.id_of[x], Y.id_of[y])] for (x, y) in sorted(obj, key=obj.get)]
    olabels = [f"{X.object_label(x)},{Y.object_label(y)}" for (x, y) in sorted(obj, key=obj.get)]
    W = validate_groupoid(len(obj), src, tgt, comp, inv, ids, olabels,
                          [f"[{X.morphism_label(m)},{Y.morphism_label(n)}]" for m, n in reps])
    value, morphism = {}, {}
    for (x, y), o in obj.items():
        vo = {}
        for f in X.aut(x):
            for g in Y.aut(y):
                vo[cls[(f, g)]] = A.add(bX(f), bY(g))
        value[o] = vo
        morphism[o] = {a: f for f, a in vo.items()}
        if len(morphism[o]) != A.order:
            raise ValidationError("contracted automorphism group has the wrong size")
    return ContractedGroupoid(W, Band(W, A, value, morphism), X, Y, obj, cls, bX, bY)


@dataclass(frozen=True, eq=False)
class BaerSum:
    torsor: GroupoidTorsor
    contracted: ContractedGroupoid
    point: dict  # (p, q) -> carrier index


def baer_sum(P, Q, A, band_p=None, band_q=None):
    """``(P x_base Q) / A`` with ``a`` acting as ``(t_a p, t_-a q)``.

    The result is a torsor of the contracted groupoid of the two groupoids.
    """
    if P.n_base != Q.n_base:
        raise IncompatibleBases("torsors live over different bases")
    if not isinstance(A, AbelianGroup):
        raise NotAbelian("Baer sums need an abelian bounding group")
    bP = _require_band(P, A, band_p)
    bQ = _require_band(Q, A, band_q)
    C = contracted_groupoid(P.groupoid, bP, Q.groupoid, bQ)
    W = C.groupoid
    pairs = [(p, q) for p in range(P.size) for q in range(Q.size) if P.proj[p] == Q.proj[q]]
    cls, reps = {}, []
    for p, q in pairs:
        if (p, q) in cls:
            continue
        orbit = {(P.act(bP.at(P.anchor[p], a), p), Q.act(bQ.at(Q.anchor[q], A.neg(a)), q))
                 for a in A.elements}
        for v in orbit:
            cls[v] = len(reps)
        reps.append(min(orbit))
    k = len(reps)
    act = np.full((W.n_morphisms, k), -1, dtype=np.int64)
    for (m, n), w in C.mor.items():
        for i, (p, q) in enumerate(reps):
            if P.anchor[p] == P.groupoid.src[m] and Q.anchor[q] == Q.groupoid.src[n]:
                r = cls[(P.act(m, p), Q.act(n, q))]
                if act[w, i] >= 0 and act[w, i] != r:
                    raise QuotientIllDefined("action does not descend to the contracted product",
                                             witness=(m, n, p, q))
                act[w, i] = r
    T = validate_torsor(W, P.n_base, [P.proj[p] for p, _ in reps],
                        [C.obj[(P.anchor[p], Q.anchor[q])] for p, q in reps], act,
                        [f"[{P.label(p)},{Q.label(q)}]" for p, q in reps])
    return BaerSum(T, C, cls)


def contraction_to_left(C):
    """For a one-object right factor, the Morita morphism ``X ^A Y -> X``
    sending ``[(m, n)]`` to ``m ; t_v`` with ``v`` the band value of ``n``."""
    from .morita import validate_morita_morphism

    X, Y = C.left, C.right
    if Y.n_objects != 1:
        raise InvalidInput("right factor must have one object")
    f0 = [None] * C.groupoid.n_objects
    for (x, _), o in C.obj.items():
        f0[o] = x
    f1 = [None] * C.groupoid.n_morphisms
    for (m, n), w in C.mor.items():
        img = X.compose(m, C.left_band.at(X.tgt[m], C.right_band(n)))
        if f1[w] is not None and f1[w] != img:
            raise QuotientIllDefined("projection does not descend", witness=(m, n))
        f1[w] = img
    return validate_morita_morphism(C.groupoid, X, f0, f1)
