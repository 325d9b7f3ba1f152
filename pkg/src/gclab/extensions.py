"""Group extensions ``1 -> A -> G -> H -> 1`` with abelian kernel.

Extensions built from a 2-cocycle ``h`` live on pairs ``(a, s)`` with the law
``(a, s)(b, t) = (a + s.b + h(s, t), st)``; the canonical section is
``s -> (0, s)`` and extracting a cocycle through it returns ``h`` exactly.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import FiniteGroup, GModule, GroupHom
from .caps import check_cap
from .cohomology import Cochain, cohomologous, cohomology_group
from .errors import (CapExceeded, InvalidInput, NotACocycle, NotASection,
                     NotSplit, ShapeMismatch, ValidationError)


def _group_from_table(t, labels=None):
    n = len(t)
    ar = np.arange(n)
    e = next(i for i in range(n) if (t[i] == ar).all())
    inverse = tuple(int(np.nonzero(t[a] == e)[0][0]) for a in range(n))
    return FiniteGroup(tuple(tuple(int(v) for v in row) for row in t), e, inverse,
                       labels)


@dataclass(frozen=True, eq=False)
class GroupExtension:
    """``total`` with kernel ``embed: A -> total`` and ``projection: total -> H``.

    ``module`` is the induced action of H on A by conjugation.
    """

    total: FiniteGroup
    module: GModule
    embed: tuple
    projection: GroupHom
    pairs: tuple = None

    @property
    def quotient(self):
        return self.module.group

    @property
    def kernel(self):
        return self.module.coeffs

    def k(self, a):
        return self.embed[self.kernel.index(a)]

    def kernel_value(self, x):
        """The ``a`` with ``k(a) == x``."""
        try:
            return self.kernel.element(self.embed.index(x))
        except ValueError:
            raise InvalidInput(f"element {x} is not in the kernel") from None

    def canonical_section(self):
        if self.pairs is None:
            raise InvalidInput("extension has no pair coordinates")
        A = self.kernel
        index = {p: i for i, p in enumerate(self.pairs)}
        return make_section(self, [index[(A.zero, s)] for s in range(self.quotient.order)])

    def fibre(self, s):
        return [x for x in range(self.total.order) if self.projection(x) == s]


@dataclass(frozen=True)
class Section:
    map: tuple
    homomorphic: bool

    def __call__(self, s):
        return self.map[s]


def make_section(E, images):
    images = tuple(int(x) for x in images)
    H, G = E.quotient, E.total
    if len(images) != H.order:
        raise NotASection("one image per quotient element required")
    for s, x in enumerate(images):
        if not 0 <= x < G.order or E.projection(x) != s:
            raise NotASection(f"projection of j({s}) is not {s}", witness=s)
    hom = all(G.mul(images[s], images[t]) == images[H.mul(s, t)]
              for s in range(H.order) for t in range(H.order))
    return Section(images, hom)


def extension_from_cocycle(M, h):
    """Build the extension of ``M.group`` by ``M.coeffs`` defined by ``h``.

    Raises :class:`NotACocycle` when the resulting law is not associative;
    the witness is the triple of quotient elements where it fails.
    """
    if h.degree != 2 or not h.module.same_as(M):
        raise ShapeMismatch("expected a 2-cochain over the given module")
    H, A = M.group, M.coeffs
    nH = H.order
    c = tuple(int(x) for x in h.values[H.identity, H.identity])
    ident = (A.sub(A.zero, c), H.identity)
    pairs = [(a, s) for s in range(nH) for a in A.elements]
    pairs.remove(ident)
    pairs.insert(0, ident)
    index = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    t = np.zeros((n, n), dtype=np.int64)
    for i, (a, s) in enumerate(pairs):
        for j, (b, u) in enumerate(pairs):
            v = A.add(A.add(a, M.act(s, b)), tuple(int(x) for x in h.values[s, u]))
            t[i, j] = index[(v, H.mul(s, u))]
    for x in range(n):
        bad = np.argwhere(t[t[x]] != t[x][t])
        if len(bad):
            y, z = (int(v) for v in bad[0])
            triple = (pairs[x][1], pairs[y][1], pairs[z][1])
            raise NotACocycle(f"group law not associative over {triple}", witness=triple)
    if (t[0] != np.arange(n)).any():
        raise NotACocycle("pair (-h(e,e), e) is not an identity",
                          witness=(H.identity, H.identity, H.identity))
    labels = tuple(f"({','.join(map(str, a))};{H.label(s)})" for a, s in pairs)
    G = _group_from_table(t, labels)
    embed = tuple(index[(A.sub(a, c), H.identity)] for a in A.elements)
    proj = GroupHom(G, H, tuple(s for _, s in pairs))
    return GroupExtension(G, M, embed, proj, tuple(pairs))


def extension_from_data(total, kernel, embed, quotient, projection):
    """Validate an extension given by explicit maps and derive its action."""
    from .algebra import validate_gmodule, validate_hom

    proj = validate_hom(total, quotient, projection)
    if not proj.is_surjective:
        raise ValidationError("projection is not onto")
    embed = tuple(int(x) for x in embed)
    Ag = kernel.as_group()
    validate_hom(Ag, total, embed)
    if len(set(embed)) != kernel.order:
        raise ValidationError("kernel embedding is not injective")
    if sorted(embed) != sorted(proj.kernel()):
        raise ValidationError("image of the kernel is not the kernel of the projection")
    lift = {}
    for x in range(total.order):
        lift.setdefault(proj(x), x)
    where = {x: i for i, x in enumerate(embed)}
    tables = []
    for s in range(quotient.order):
        g = lift[s]
        gi = total.inv(g)
        tables.append([where[total.prod(g, x, gi)] for x in embed])
    M = validate_gmodule(quotient, kernel, tables)
    return GroupExtension(total, M, embed, proj)


def cocycle_from_extension(E, j):
    """``f(s, t) = j(s) j(t) j(st)^-1`` read back in the kernel."""
    if not isinstance(j, Section):
        j = make_section(E, j)
    else:
        j = make_section(E, j.map)
    G, H = E.total, E.quotient
    A = E.kernel
    N = H.order
    vals = np.zeros((N, N, A.rank), dtype=np.int64)
    for s in range(N):
        for t in range(N):
            x = G.prod(j(s), j(t), G.inv(j(H.mul(s, t))))
            vals[s, t] = E.kernel_value(x)
    return Cochain(E.module, 2, vals)


def _check_same_shape(E1, E2):
    if not E1.module.same_as(E2.module):
        raise ShapeMismatch("extensions have different kernel modules or quotients")


def _map_from_twist(E1, E2, j1, j2, g):
    """``k1(a) j1(s) -> k2(a + g(s)) j2(s)`` as an index table."""
    G1, G2, A = E1.total, E2.total, E1.kernel
    out = [None] * G1.order
    for s in range(E1.quotient.order):
        for a in A.elements:
            x = G1.mul(E1.k(a), j1(s))
            out[x] = G2.mul(E2.k(A.add(a, g[s])), j2(s))
    return tuple(out)


def _is_hom(G1, G2, mp):
    arr = np.array(mp)
    return bool((arr[G1.table] == G2.table[arr][:, arr]).all())


def extensions_isomorphic(E1, E2, method="auto"):
    """An isomorphism of total groups that is the identity on A and on H.

    ``method`` is ``"search"`` (exhaustive over all twists by maps H -> A),
    ``"linear"`` (solve for the twist by linear algebra) or ``"auto"``
    (search when within the enumeration cap).  Returns ``None`` when the
    extensions are inequivalent.
    """
    _check_same_shape(E1, E2)
    H, A = E1.quotient, E1.kernel
    j1 = make_section(E1, [E1.fibre(s)[0] for s in range(H.order)])
    j2 = make_section(E2, [E2.fibre(s)[0] for s in range(H.order)])
    if method == "auto":
        try:
            check_cap(A.order ** H.order, "twist search")
            method = "search"
        except CapExceeded:
            method = "linear"
    if method == "search":
        check_cap(A.order ** H.order, "twist search")
        for g in product(A.elements, repeat=H.order):
            mp = _map_from_twist(E1, E2, j1, j2, g)
            if _is_hom(E1.total, E2.total, mp):
                return GroupHom(E1.total, E2.total, mp)
        return None
    f1 = cocycle_from_extension(E1, j1)
    f2 = cocycle_from_extension(E2, j2)
    g = cohomologous(f1, f2)
    if g is None:
        return None
    mp = _map_from_twist(E1, E2, j1, j2, [g(s) for s in range(H.order)])
    assert _is_hom(E1.total, E2.total, mp)
    return GroupHom(E1.total, E2.total, mp)


@dataclass
class SectionClasses:
    """Homomorphic sections up to conjugation by the kernel, with the H^1 action.

    ``orbits`` lists each class as a sorted tuple of section maps;
    ``action[c][o]`` is the orbit obtained by twisting orbit ``o`` with the
    H^1 class of coordinates ``classes[c]``.
    """

    extension: GroupExtension
    sections: list
    orbits: list
    h1: object
    classes: list
    action: list

    @property
    def orbit_count(self):
        return len(self.orbits)


def twist_section(E, z, j):
    """``(z.j)(s) = k(z(s)) j(s)`` for a 1-cochain ``z``."""
    G = E.total
    return tuple(G.mul(E.k(z(s)), j[s]) for s in range(E.quotient.order))


def sections_mod_conjugation(E):
    """Enumerate homomorphic sections of a split extension modulo the kernel."""
    G, H, A = E.total, E.quotient, E.kernel
    check_cap(A.order ** H.order, "section enumeration")
    fibres = [E.fibre(s) for s in range(H.order)]
    sections = []
    for choice in product(*fibres):
        if all(G.mul(choice[s], choice[t]) == choice[H.mul(s, t)]
               for s in range(H.order) for t in range(H.order)):
            sections.append(tuple(choice))
    if not sections:
        raise NotSplit("extension has no homomorphic section")
    orbit_of = {}
    orbits = []
    for j in sections:
        if j in orbit_of:
            continue
        orb = set()
        for b in A.elements:
            kb, kbi = E.k(b), G.inv(E.k(b))
            orb.add(tuple(G.prod(kb, x, kbi) for x in j))
        orb = tuple(sorted(orb))
        for x in orb:
            orbit_of[x] = len(orbits)
        orbits.append(orb)
    H1 = cohomology_group(E.module, 1)
    classes = list(H1.elements())
    action = []
    for coords in classes:
        z = H1.element(coords)
        row = []
        for orb in orbits:
            tw = twist_section(E, z, orb[0])
            if tw not in orbit_of:
                raise ValidationError("twisted section is not homomorphic", witness=coords)
            row.append(orbit_of[tw])
        action.append(row)
    # simple transitivity: from any orbit, the classes reach every orbit once
    for o in range(len(orbits)):
        if sorted(row[o] for row in action) != list(range(len(orbits))):
            raise ValidationError("H^1 does not act simply transitively", witness=o)
    return SectionClasses(E, sections, orbits, H1, classes, action)
