"""Finite groupoids.

Composition is written left to right: ``compose(f, g)`` is defined exactly
when ``tgt(f) == src(g)`` and goes from ``src(f)`` to ``tgt(g)``.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AbelianGroup, FiniteGroup, find_group_isomorphism
from .errors import (BadComposability, BadIdentity, BadInverse, InvalidInput,
                     NotAnAction, NotAssociative)


@dataclass(frozen=True, eq=False)
class Groupoid:
    n_objects: int
    src: tuple
    tgt: tuple
    comp: np.ndarray  # comp[f, g] = f;g or -1
    inv: tuple
    id_of: tuple
    object_labels: tuple = None
    morphism_labels: tuple = None

    @property
    def n_morphisms(self):
        return len(self.src)

    def compose(self, f, g):
        r = int(self.comp[f, g])
        if r < 0:
            raise BadComposability(f"{f} and {g} are not composable", witness=(f, g))
        return r

    def chain(self, *ms):
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    @cached_property
    def _homs(self):
        homs = {}
        for f in range(self.n_morphisms):
            homs.setdefault((self.src[f], self.tgt[f]), []).append(f)
        return homs

    def hom(self, x, y):
        return self._homs.get((x, y), [])

    def aut(self, x):
        return self.hom(x, x)

    def aut_group(self, x):
        """``Aut(x)`` as a :class:`FiniteGroup` plus the list of its morphisms."""
        ms = self.aut(x)
        pos = {m: i for i, m in enumerate(ms)}
        cayley = tuple(tuple(pos[int(self.comp[a, b])] for b in ms) for a in ms)
        inverse = tuple(pos[self.inv[a]] for a in ms)
        return FiniteGroup(cayley, pos[self.id_of[x]], inverse), ms

    def object_label(self, x):
        return self.object_labels[x] if self.object_labels else str(x)

    def morphism_label(self, f):
        return self.morphism_labels[f] if self.morphism_labels else str(f)

    def __repr__(self):
        return f"Groupoid(objects={self.n_objects}, morphisms={self.n_morphisms})"


def validate_groupoid(n_objects, src, tgt, compose, inv=None, id_of=None,
                      object_labels=None, morphism_labels=None):
    """Check every groupoid axiom and return a :class:`Groupoid`.

    ``compose`` is a mapping ``(f, g) -> h`` or a square table with -1 for
    undefined entries.
    """
    src = tuple(int(x) for x in src)
    tgt = tuple(int(x) for x in tgt)
    n = len(src)
    if len(tgt) != n:
        raise InvalidInput("src and tgt must have equal length")
    if any(not 0 <= x < n_objects for x in src + tgt):
        raise InvalidInput("object index out of range")
    comp = np.full((n, n), -1, dtype=np.int64)
    if isinstance(compose, dict):
        for (f, g), h in compose.items():
            comp[f, g] = h
    else:
        comp[:] = np.asarray(compose, dtype=np.int64).reshape(n, n)
    if comp.max(initial=-1) >= n:
        raise InvalidInput("composite index out of range")
    s, t = np.array(src), np.array(tgt)
    should = t[:, None] == s[None, :]
    defined = comp >= 0
    bad = np.argwhere(should != defined)
    if len(bad):
        f, g = (int(v) for v in bad[0])
        raise BadComposability(
            f"composition of {f} and {g} is {'missing' if should[f, g] else 'defined but not composable'}",
            witness=(f, g))
    fs, gs = np.nonzero(defined)
    hs = comp[fs, gs]
    wrong = (s[hs] != s[fs]) | (t[hs] != t[gs])
    if wrong.any():
        i = int(np.argmax(wrong))
        raise BadComposability("composite has the wrong endpoints",
                               witness=(int(fs[i]), int(gs[i])))
    # associativity over composable triples, batched by the middle object
    bad = []
    for y in range(n_objects):
        sel = t[gs] == y
        hs = np.nonzero(s == y)[0]
        if not sel.any() or not len(hs):
            continue
        f_, g_ = fs[sel][:, None], gs[sel][:, None]
        lhs = comp[comp[f_, g_], hs[None, :]]
        rhs = comp[f_, comp[g_, hs[None, :]]]
        for i, j in np.argwhere(lhs != rhs):
            bad.append((int(f_[i, 0]), int(g_[i, 0]), int(hs[j])))
    if bad:
        f, g, h = min(bad)
        raise NotAssociative(f"({f};{g});{h} != {f};({g};{h})", witness=(f, g, h))
    ids = []
    for x in range(n_objects):
        cand = [id_of[x]] if id_of is not None else [f for f in range(n) if src[f] == x == tgt[f]]
        found = None
        for e in cand:
            if src[e] != x or tgt[e] != x:
                continue
            out_ = np.nonzero(s == x)[0]
            in_ = np.nonzero(t == x)[0]
            if (comp[e, out_] == out_).all() and (comp[in_, e] == in_).all():
                found = int(e)
                break
        if found is None:
            raise BadIdentity(f"object {x} has no identity morphism", witness=x)
        ids.append(found)
    invs = []
    for f in range(n):
        cand = [inv[f]] if inv is not None else np.nonzero((s == tgt[f]) & (t == src[f]))[0]
        found = None
        for g in cand:
            g = int(g)
            if (src[g] == tgt[f] and tgt[g] == src[f] and comp[f, g] == ids[src[f]]
                    and comp[g, f] == ids[tgt[f]]):
                found = g
                break
        if found is None:
            raise BadInverse(f"morphism {f} has no inverse", witness=f)
        invs.append(found)
    comp.flags.writeable = False
    return Groupoid(n_objects, src, tgt, comp, tuple(invs), tuple(ids),
                    tuple(object_labels) if object_labels else None,
                    tuple(morphism_labels) if morphism_labels else None)


def groupoid_from_group(G):
    """One-object groupoid with ``f;g = f*g``."""
    n = G.order
    return validate_groupoid(1, [0] * n, [0] * n, G.table, G.inverse,
                             [G.identity], None,
                             G.labels)


def discrete_groupoid(n):
    return equivalence_relation_groupoid([[i] for i in range(n)])


def pair_groupoid(n):
    return equivalence_relation_groupoid([list(range(n))])


def action_groupoid(G, action, labels=None):
    """Groupoid of ``G`` acting on points; ``action[g][x]`` is ``g.x``.

    The morphism ``(g, x)`` goes ``x -> g.x``; composing ``(g, x)`` then
    ``(h, g.x)`` gives ``(hg, x)``.
    """
    action = [tuple(int(v) for v in row) for row in action]
    if len(action) != G.order:
        raise InvalidInput("need one action row per group element")
    npts = len(action[0]) if action else 0
    for g in range(G.order):
        if len(action[g]) != npts or any(not 0 <= v < npts for v in action[g]):
            raise NotAnAction(f"row {g} is not a map of the point set", witness=(g,))
    for x in range(npts):
        if action[G.identity][x] != x:
            raise NotAnAction(f"identity moves point {x}", witness=(G.identity, x))
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul(g, h)
            for x in range(npts):
                if action[gh][x] != action[g][action[h][x]]:
                    raise NotAnAction(f"({g}*{h}).{x} != {g}.({h}.{x})",
                                      witness=(g, h, x))

    def idx(g, x):
        return g * npts + x

    src, tgt = [], []
    for g in range(G.order):
        for x in range(npts):
            src.append(x)
            tgt.append(action[g][x])
    n = G.order * npts
    comp = np.full((n, n), -1, dtype=np.int64)
    for g in range(G.order):
        for x in range(npts):
            gx = action[g][x]
            for h in range(G.order):
                comp[idx(g, x), idx(h, gx)] = idx(G.mul(h, g), x)
    inv = [idx(G.inv(g), action[g][x]) for g in range(G.order) for x in range(npts)]
    ids = [idx(G.identity, x) for x in range(npts)]
    mlabels = [f"{G.label(g)}@{labels[x] if labels else x}"
               for g in range(G.order) for x in range(npts)]
    return validate_groupoid(npts, src, tgt, comp, inv, ids, labels, mlabels)


def equivalence_relation_groupoid(partition):
    """One morphism ``(x, y)`` for every related pair."""
    blocks = [sorted(int(x) for x in b) for b in partition]
    elems = sorted(x for b in blocks for x in b)
    n_obj = len(elems)
    if elems != list(range(n_obj)):
        raise InvalidInput("partition must cover 0..n-1 exactly once")
    pairs = [(x, y) for b in blocks for x in b for y in b]
    pairs.sort()
    index = {p: i for i, p in enumerate(pairs)}
    comp = {}
    for (x, y) in pairs:
        for b in blocks:
            if y in b:
                for z in b:
                    comp[(index[(x, y)], index[(y, z)])] = index[(x, z)]
    return validate_groupoid(n_obj, [p[0] for p in pairs], [p[1] for p in pairs], comp,
                             [index[(y, x)] for x, y in pairs],
                             [index[(x, x)] for x in range(n_obj)],
                             None, [f"{x}->{y}" for x, y in pairs])


@dataclass(frozen=True)
class GroupoidQuotient:
    classes: tuple
    projection: tuple

    def __len__(self):
        return len(self.classes)


def groupoid_quotient(X):
    parent = list(range(X.n_objects))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in range(X.n_morphisms):
        a, b = find(X.src[f]), find(X.tgt[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for x in range(X.n_objects):
        groups.setdefault(find(x), []).append(x)
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    proj = [0] * X.n_objects
    for i, c in enumerate(classes):
        for x in c:
            proj[x] = i
    return GroupoidQuotient(classes, tuple(proj))


def is_connected(X):
    return len(groupoid_quotient(X)) == 1


def spanning_tree(X, root):
    """BFS from ``root``: ``{y: morphism root-side parent -> y}`` (lowest index first)."""
    tree = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for f in range(X.n_morphisms):
            if X.src[f] == x and X.tgt[f] not in tree:
                tree[X.tgt[f]] = f
                queue.append(X.tgt[f])
    return tree


def path_from(X, tree, y):
    """A morphism ``root -> y`` obtained by composing tree edges."""
    edges = []
    while tree[y] is not None:
        f = tree[y]
        edges.append(f)
        y = X.src[f]
    if not edges:
        return X.id_of[y]
    return X.chain(*reversed(edges))


@dataclass(frozen=True, eq=False)
class Band:
    """Isomorphisms ``Aut(x) -> A`` for every object, compatible along paths.

    ``value[x][f]`` is the element of ``A`` attached to ``f in Aut(x)`` and
    ``morphism[x][a]`` the automorphism with value ``a``.
    """

    groupoid: Groupoid
    group: object
    value: dict
    morphism: dict

    def __call__(self, f):
        return self.value[self.groupoid.src[f]][f]

    def at(self, x, a):
        return self.morphism[x][a]


def _elements(A):
    if isinstance(A, AbelianGroup):
        return list(A.elements), A.as_group()
    return list(range(A.order)), A


def bounded_by(X, A, root_isos=None):
    """Identify every automorphism group of ``X`` with ``A``, or return ``None``.

    Per component the base object is its lowest index; its isomorphism is
    taken from ``root_isos`` (``{object: {morphism: element}}``) if given,
    else found by search.  Other objects are reached by a breadth-first
    spanning tree and identified by conjugating along the tree path.
    """
    elems, GA = _elements(A)
    value, morphism = {}, {}
    for cls in groupoid_quotient(X).classes:
        r = cls[0]
        autG, ms = X.aut_group(r)
        if root_isos and r in root_isos:
            phi = dict(root_isos[r])
        else:
            iso = find_group_isomorphism(autG, GA)
            if iso is None:
                return None
            phi = {ms[i]: elems[iso[i]] for i in range(len(ms))}
        if set(phi) != set(ms) or sorted(map(str, phi.values())) != sorted(map(str, elems)):
            return None
        pos = {a: i for i, a in enumerate(elems)}
        for f in ms:
            for g in ms:
                if pos[phi[X.compose(f, g)]] != GA.mul(pos[phi[f]], pos[phi[g]]):
                    return None
        tree = spanning_tree(X, r)
        for y in cls:
            m = path_from(X, tree, y)
            mi = X.inv[m]
            vy = {}
            for f in X.aut(y):
                vy[f] = phi[X.chain(m, f, mi)]
            value[y] = vy
            morphism[y] = {a: f for f, a in vy.items()}
    return Band(X, A, value, morphism)
