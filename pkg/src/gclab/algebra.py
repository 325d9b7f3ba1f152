"""Finite groups, finite abelian groups and G-modules.

Group elements are dense indices ``0..order-1``.  Abelian groups are
products of cyclic factors with elements written as residue tuples; their
index order is lexicographic in the tuple (first factor most significant).
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from math import gcd, prod

import numpy as np

from .caps import MAX_GROUP_ORDER
from .errors import (InvalidInput, NoIdentity, NoInverse, NotAssociative,
                     NotAutomorphism, NotCompatible, NotHomomorphism)
from .snf import smith_mod


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: tuple
    identity: int
    inverse: tuple
    labels: tuple = None

    @property
    def order(self):
        return len(self.cayley)

    @cached_property
    def table(self):
        return np.array(self.cayley, dtype=np.int64).reshape(self.order, self.order)

    def mul(self, a, b):
        return self.cayley[a][b]

    def inv(self, a):
        return self.inverse[a]

    def prod(self, *elts):
        return reduce(self.mul, elts, self.identity)

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse[a], -k
        r = self.identity
        for _ in range(k):
            r = self.cayley[r][a]
        return r

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self):
        t = self.table
        return bool((t == t.T).all())

    def generated(self, gens):
        """Subgroup generated by ``gens`` as a sorted tuple of indices."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.cayley[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily by decreasing order."""
        by_order = sorted(range(self.order),
                          key=lambda a: (-self.element_order(a), a))
        gens, span = [], {self.identity}
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = set(self.generated(gens))
            if len(span) == self.order:
                break
        return tuple(gens)

    def label(self, a):
        return self.labels[a] if self.labels else str(a)

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup) and self.cayley == other.cayley
                and self.identity == other.identity)

    def __hash__(self):
        return hash((self.cayley, self.identity))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def validate_group(cayley, labels=None):
    """Check the group axioms exhaustively and return a :class:`FiniteGroup`.

    Raises :class:`NotAssociative`, :class:`NoIdentity` or :class:`NoInverse`
    naming the first witness found.
    """
    try:
        t = np.array(cayley, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed Cayley table: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise InvalidInput("Cayley table must be a non-empty square table")
    n = t.shape[0]
    if n > MAX_GROUP_ORDER:
        raise InvalidInput(f"order {n} exceeds cap {MAX_GROUP_ORDER}")
    if t.min() < 0 or t.max() >= n:
        raise InvalidInput("Cayley table entry out of range")
    for a in range(n):
        # (ab)c vs a(bc) for all b, c at once
        lhs = t[t[a]]
        rhs = t[a][t]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})",
                                 witness=(a, b, c))
    ar = np.arange(n)
    ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ids:
        raise NoIdentity("no two-sided identity", witness=None)
    e = ids[0]
    inverse = []
    for a in range(n):
        cands = np.nonzero((t[a] == e) & (t[:, a] == e))[0]
        if len(cands) == 0:
            raise NoInverse(f"element {a} has no inverse", witness=a)
        inverse.append(int(cands[0]))
    return FiniteGroup(tuple(tuple(int(v) for v in row) for row in t), e,
                       tuple(inverse), tuple(labels) if labels else None)


def group_from_cyclic_factors(moduli):
    """Direct product of cyclic groups, identity at index 0."""
    A = AbelianGroup(moduli)
    return A.as_group()


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple

    def __init__(self, moduli):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in moduli):
            raise InvalidInput(f"moduli must be positive, got {list(moduli)}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def rank(self):
        return len(self.moduli)

    @property
    def order(self):
        return prod(self.moduli)

    @property
    def exponent(self):
        return reduce(_lcm, self.moduli, 1)

    @property
    def zero(self):
        return (0,) * self.rank

    @cached_property
    def elements(self):
        return tuple(product(*(range(m) for m in self.moduli)))

    @cached_property
    def _strides(self):
        s, acc = [], 1
        for m in reversed(self.moduli):
            s.append(acc)
            acc *= m
        return tuple(reversed(s))

    def index(self, a):
        return sum(x * s for x, s in zip(a, self._strides))

    def element(self, i):
        return self.elements[i]

    def reduce(self, a):
        return tuple(int(x) % m for x, m in zip(a, self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a, b):
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def scale(self, k, a):
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def element_order(self, a):
        return reduce(_lcm, (m // gcd(x, m) for x, m in zip(a, self.moduli)), 1)

    @staticmethod
    def format(a):
        return str(a[0]) if len(a) == 1 else "(" + ",".join(map(str, a)) + ")"

    @cached_property
    def mod_array(self):
        return np.array(self.moduli, dtype=np.int64)

    def as_group(self):
        els = self.elements
        cayley = tuple(tuple(self.index(self.add(a, b)) for b in els) for a in els)
        inverse = tuple(self.index(self.neg(a)) for a in els)
        return FiniteGroup(cayley, 0, inverse, tuple(self.format(a) for a in els))

    @cached_property
    def elementary_divisors(self):
        """Sorted prime-power orders of the cyclic pieces (isomorphism type)."""
        out = []
        for m in self.moduli:
            n, p = m, 2
            while p * p <= n:
                if n % p == 0:
                    k = 1
                    while n % p == 0:
                        n //= p
                        k *= p
                    out.append(k)
                p += 1
            if n > 1:
                out.append(n)
        return tuple(sorted(out))

    def isomorphic(self, other):
        return self.elementary_divisors == other.elementary_divisors

    def __repr__(self):
        if not self.moduli or self.order == 1:
            return "0"
        return " x ".join(f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True, eq=False)
class AbelianHom:
    """Additive map given by the images of the standard generators."""

    source: AbelianGroup
    target: AbelianGroup
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.target.reduce(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.rank:
            raise InvalidInput("one image per source generator required")
        for m, v in zip(self.source.moduli, imgs):
            if self.target.scale(m, v) != self.target.zero:
                raise NotHomomorphism(f"generator image {v} not killed by {m}",
                                      witness=v)

    @cached_property
    def matrix(self):
        M = np.zeros((self.target.rank, self.source.rank), dtype=np.int64)
        for j, v in enumerate(self.images):
            M[:, j] = v
        return M

    def __call__(self, a):
        out = self.target.zero
        for x, v in zip(a, self.images):
            out = self.target.add(out, self.target.scale(x, v))
        return out

    def apply_array(self, vals):
        """Apply to an array whose last axis holds source tuples."""
        return (np.asarray(vals, dtype=np.int64) @ self.matrix.T) % self.target.mod_array

    @classmethod
    def identity(cls, A):
        return cls(A, A, tuple(tuple(int(i == j) for i in range(A.rank))
                               for j in range(A.rank)))

    @classmethod
    def zero_map(cls, A, B):
        return cls(A, B, tuple(B.zero for _ in range(A.rank)))


@dataclass(frozen=True, eq=False)
class GModule:
    """A finite abelian group with a left action of a finite group.

    ``action[g][i]`` is the index of ``g . a`` for ``a = coeffs.element(i)``.
    """

    group: FiniteGroup
    coeffs: AbelianGroup
    action: tuple

    @cached_property
    def matrices(self):
        """Per group element, the integer matrix of the action on generators."""
        A = self.coeffs
        out = []
        for g in range(self.group.order):
            M = np.zeros((A.rank, A.rank), dtype=np.int64)
            for j in range(A.rank):
                gen = A.reduce(tuple(int(i == j) for i in range(A.rank)))
                M[:, j] = A.element(self.action[g][A.index(gen)])
            out.append(M)
        return np.array(out, dtype=np.int64).reshape(self.group.order, A.rank, A.rank)

    @cached_property
    def is_trivial(self):
        return all(row == tuple(range(self.coeffs.order)) for row in self.action)

    def act(self, g, a):
        return self.coeffs.element(self.action[g][self.coeffs.index(a)])

    def act_array(self, g, vals):
        return (np.asarray(vals) @ self.matrices[g].T) % self.coeffs.mod_array

    def same_as(self, other):
        return (self.group == other.group and self.coeffs == other.coeffs
                and self.action == other.action)

    def __repr__(self):
        kind = "trivial" if self.is_trivial else "twisted"
        return f"GModule(|G|={self.group.order}, A={self.coeffs!r}, {kind})"


def validate_gmodule(G, A, action):
    """Validate one bijection table per group element as a left G-action."""
    n = A.order
    if len(action) != G.order:
        raise InvalidInput("need one action table per group element")
    tables = []
    els = A.elements
    for g, row in enumerate(action):
        row = tuple(int(x) for x in row)
        if sorted(row) != list(range(n)):
            raise NotAutomorphism(f"action of {g} is not a bijection", witness=(g,))
        for a in els:
            for b in els:
                lhs = row[A.index(A.add(a, b))]
                rhs = A.index(A.add(els[row[A.index(a)]], els[row[A.index(b)]]))
                if lhs != rhs:
                    raise NotAutomorphism(f"action of {g} not additive at {a}, {b}",
                                          witness=(g, a, b))
        tables.append(row)
    if tables[G.identity] != tuple(range(n)):
        raise NotCompatible("identity does not act trivially", witness=(G.identity,))
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mul(g, h)
            composed = tuple(tables[g][tables[h][i]] for i in range(n))
            if tables[gh] != composed:
                raise NotCompatible(f"action[{g}*{h}] != action[{g}] o action[{h}]",
                                    witness=(g, h))
    return GModule(G, A, tuple(tables))


def module_from_matrices(G, A, matrices):
    """Build a G-module from integer matrices acting on generators."""
    tables = []
    for M in matrices:
        M = np.asarray(M, dtype=np.int64)
        row = []
        for a in A.elements:
            img = (M @ np.array(a, dtype=np.int64)) % A.mod_array if A.rank else ()
            row.append(A.index(tuple(int(x) for x in img)))
        tables.append(row)
    return validate_gmodule(G, A, tables)


def trivial_module(G, A):
    ident = tuple(range(A.order))
    return GModule(G, A, tuple(ident for _ in range(G.order)))


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __call__(self, x):
        return self.map[x]

    @property
    def is_surjective(self):
        return len(set(self.map)) == self.target.order

    @property
    def is_injective(self):
        return len(set(self.map)) == self.source.order

    def kernel(self):
        return tuple(x for x in range(self.source.order)
                     if self.map[x] == self.target.identity)


def validate_hom(source, target, mapping):
    mapping = tuple(int(v) for v in mapping)
    if len(mapping) != source.order:
        raise InvalidInput("map must have one entry per source element")
    for x in range(source.order):
        for y in range(source.order):
            if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                raise NotHomomorphism(f"map({x}*{y}) != map({x})*map({y})",
                                      witness=(x, y))
    return GroupHom(source, target, mapping)


def find_group_isomorphism(G1, G2):
    """Exhaustive isomorphism search; returns an index map or ``None``."""
    return next(iter_group_isomorphisms(G1, G2), None)


def iter_group_isomorphisms(G1, G2):
    """All isomorphisms ``G1 -> G2`` as index maps, in a fixed order."""
    if G1.order != G2.order or G1.is_abelian != G2.is_abelian:
        return
    o1 = sorted(G1.element_order(a) for a in range(G1.order))
    o2 = sorted(G2.element_order(a) for a in range(G2.order))
    if o1 != o2:
        return
    gens = G1.generators
    cands = [[b for b in range(G2.order)
              if G2.element_order(b) == G1.element_order(g)] for g in gens]

    def extend(images):
        m = {G1.identity: G2.identity}
        frontier = [G1.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, images):
                    y, yi = G1.mul(x, g), G2.mul(m[x], gi)
                    if y in m:
                        if m[y] != yi:
                            return None
                    else:
                        m[y] = yi
                        nxt.append(y)
            frontier = nxt
        if len(set(m.values())) != G1.order:
            return None
        mp = tuple(m[x] for x in range(G1.order))
        t1, t2 = G1.table, G2.table
        arr = np.array(mp)
        if not (arr[t1] == t2[arr][:, arr]).all():
            return None
        return mp

    def search(i, chosen):
        if i == len(gens):
            r = extend(chosen)
            if r is not None:
                yield r
            return
        for b in cands[i]:
            yield from search(i + 1, chosen + [b])

    yield from search(0, [])


def subgroup_structure(A, elements):
    """Decompose the subgroup of ``A`` generated by ``elements``.

    Returns ``(B, inclusion)`` with ``B`` a product of cyclic groups in
    divisibility-chain order and ``inclusion: B -> A`` injective.
    """
    e = A.exponent
    k = A.rank
    if k == 0 or e == 1:
        B = AbelianGroup(())
        return B, AbelianHom(B, A, ())
    scale = np.array([e // m for m in A.moduli], dtype=np.int64)
    cols = [np.array(a, dtype=np.int64) * scale % e for a in elements]
    if not cols:
        cols = [np.zeros(k, dtype=np.int64)]
    F = np.stack(cols, axis=1)
    sf = smith_mod(F, e)
    d = list(sf.d) + [e] * (k - len(sf.d))
    gens, orders = [], []
    for i in range(k):
        order = e // d[i]
        if order > 1:
            v = sf.Uinv[:, i] * d[i] % e
            gens.append(tuple(int(x // s) for x, s in zip(v, scale)))
            orders.append(order)
    gens, orders = gens[::-1], orders[::-1]
    B = AbelianGroup(orders)
    return B, AbelianHom(B, A, tuple(gens))


def invariants_subgroup(M):
    """The subgroup ``A^G`` of invariant elements with its inclusion."""
    A = M.coeffs
    fixed = [a for i, a in enumerate(A.elements)
             if all(row[i] == i for row in M.action)]
    return subgroup_structure(A, fixed)
