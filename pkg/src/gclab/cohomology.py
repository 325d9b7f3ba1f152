"""Inhomogeneous cochains, cocycle tests and H^1, H^2 of finite groups.

A degree-n cochain is stored as an integer array of shape
``(|G|,) * n + (rank A,)``; the last axis holds the residue tuple.  Group
cohomology is computed by Smith normal form over ``Z/e`` (``e`` the exponent
of A); a brute-force enumeration is kept as an independent cross-check.
"""

from dataclasses import dataclass, field
from itertools import product
from math import prod

import numpy as np

from .algebra import AbelianHom, GModule, subgroup_structure
from .caps import check_cap
from .errors import CapExceeded
from .errors import (CoefficientMismatch, InvalidInput, ModuleMismatch,
                     NotACocycle, NotEquivariant, NotSurjective)
from .snf import cokernel_mod, invariant_factors, smith_mod


def _batched_differential(M, vals, n):
    """Differential of a batch of degree-n cochain arrays (leading batch axis)."""
    G = M.group
    N = G.order
    mats = M.matrices
    mods = M.coeffs.mod_array
    if n == 0:
        out = np.einsum("gij,bj->bgi", mats, vals) - vals[:, None, :]
        return out % mods
    table = G.table
    out = np.einsum("gij,b...j->bg...i", mats, vals)
    idx = np.indices((N,) * (n + 1))
    for i in range(1, n + 1):
        args = list(idx[: i - 1]) + [table[idx[i - 1], idx[i]]] + list(idx[i + 1:])
        term = vals[(slice(None),) + tuple(args)]
        out = out + term if i % 2 == 0 else out - term
    last = vals[(slice(None),) + tuple(idx[:n])]
    out = out + last if (n + 1) % 2 == 0 else out - last
    return out % mods


@dataclass(frozen=True, eq=False)
class Cochain:
    module: GModule
    degree: int
    values: np.ndarray

    def __post_init__(self):
        N = self.module.group.order
        k = self.module.coeffs.rank
        shape = (N,) * self.degree + (k,)
        v = np.asarray(self.values, dtype=np.int64)
        if v.shape != shape:
            raise InvalidInput(f"cochain values must have shape {shape}, got {v.shape}")
        v = v % self.module.coeffs.mod_array
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, M, degree):
        N, k = M.group.order, M.coeffs.rank
        return cls(M, degree, np.zeros((N,) * degree + (k,), dtype=np.int64))

    @classmethod
    def from_function(cls, M, degree, fn):
        N, k = M.group.order, M.coeffs.rank
        arr = np.zeros((N,) * degree + (k,), dtype=np.int64)
        for args in product(range(N), repeat=degree):
            arr[args] = fn(*args)
        return cls(M, degree, arr)

    @classmethod
    def from_records(cls, M, degree, records):
        """Sparse records ``{args: value}``; missing entries are zero."""
        c = cls.zero(M, degree).values.copy()
        for args, value in records.items():
            args = tuple(args) if degree else ()
            if len(args) != degree or any(not 0 <= a < M.group.order for a in args):
                raise InvalidInput(f"bad cochain argument {args}")
            c[args] = M.coeffs.reduce(value)
        return cls(M, degree, c)

    def to_records(self):
        out = {}
        for args in product(range(self.module.group.order), repeat=self.degree):
            v = tuple(int(x) for x in self.values[args])
            if any(v):
                out[args] = v
        return out

    def __call__(self, *args):
        return tuple(int(x) for x in self.values[args])

    @property
    def flat(self):
        return self.values.reshape(-1)

    def is_zero(self):
        return not self.values.any()

    def _check(self, other):
        if not self.module.same_as(other.module) or self.degree != other.degree:
            raise ModuleMismatch("cochains live over different modules or degrees")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.module, self.degree, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.module, self.degree, self.values - other.values)

    def __neg__(self):
        return Cochain(self.module, self.degree, -self.values)

    def scale(self, t):
        return Cochain(self.module, self.degree, t * self.values)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.module.same_as(other.module)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.degree, self.values.tobytes()))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, nonzero={len(self.to_records())})"


def differential(c, module=None):
    """Inhomogeneous coboundary with standard alternating signs."""
    if module is not None and not module.same_as(c.module):
        raise ModuleMismatch("cochain is not over the given module")
    if c.degree > 2:
        raise InvalidInput("differential is implemented up to degree 2")
    out = _batched_differential(c.module, c.values[None], c.degree)[0]
    return Cochain(c.module, c.degree + 1, out)


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    witness: tuple = None

    def __bool__(self):
        return self.ok


def is_cocycle(c):
    """True iff ``d c == 0``; otherwise carries the first violating tuple."""
    if c.degree not in (1, 2):
        raise InvalidInput("cocycle test is defined in degrees 1 and 2")
    d = differential(c).values
    bad = np.argwhere(d.any(axis=-1))
    if len(bad):
        return CocycleCheck(False, tuple(int(x) for x in bad[0]))
    return CocycleCheck(True)


def normalize(h):
    """Cohomologous cocycle with ``h(e, s) = h(s, e) = 0``.

    Subtracts the coboundary of the constant 1-cochain ``h(e, e)``.
    """
    if h.degree != 2:
        return h
    e = h.module.group.identity
    c = h.values[e, e]
    N = h.module.group.order
    g = Cochain(h.module, 1, np.tile(c, (N, 1)))
    return h - differential(g)


# ---------------------------------------------------------------------------
# linear algebra


def differential_matrix(M, n):
    """Integer matrix of ``d^n`` on flattened cochains (entries mod the row modulus)."""
    N, k = M.group.order, M.coeffs.rank
    R = N ** n * k
    basis = np.eye(R, dtype=np.int64).reshape((R,) + (N,) * n + (k,))
    out = _batched_differential(M, basis, n)
    return out.reshape(R, -1).T.copy()


def _row_moduli(M, n):
    return np.tile(M.coeffs.mod_array, M.group.order ** n)


def _solve_mod(D, rhs, e):
    """Some integer x with ``D x == rhs (mod e)``, or ``None``."""
    sf = smith_mod(D, e)
    r = sf.U @ (np.asarray(rhs, dtype=np.int64) % e) % e
    rows, cols = D.shape
    y = np.zeros(cols, dtype=np.int64)
    for i in range(rows):
        v = sf.d[i] if i < len(sf.d) else e
        if v == e:
            if r[i]:
                return None
        elif r[i] % v:
            return None
        else:
            y[i] = r[i] // v
    return sf.V @ y % e


def find_coboundary_preimage(c):
    """A cochain ``g`` of degree ``n-1`` with ``d g == c``, or ``None``."""
    M, n = c.module, c.degree
    if n == 0:
        return None if c.values.any() else Cochain.zero(M, 0)
    e = M.coeffs.exponent
    N, k = M.group.order, M.coeffs.rank
    if e == 1:
        return Cochain.zero(M, n - 1)
    D = differential_matrix(M, n - 1)
    scale = e // _row_moduli(M, n)
    x = _solve_mod(D * scale[:, None] % e, c.flat * scale % e, e)
    if x is None:
        return None
    g = Cochain(M, n - 1, x.reshape((N,) * (n - 1) + (k,)))
    assert differential(g) == c
    return g


def cohomologous(h, h2):
    """A cochain ``g`` with ``h - h2 == d g``, or ``None`` when the classes differ."""
    h._check(h2)
    return find_coboundary_preimage(h - h2)


@dataclass(eq=False)
class CohomologyGroup:
    """``H^n(G, A)`` with generator cocycles and a class reduction.

    ``class_of`` maps a cocycle to its coordinates in the generators; the
    i-th coordinate is a residue modulo ``invariant_factors[i]``.
    """

    module: GModule
    degree: int
    invariant_factors: list
    representatives: list
    _coords: object = field(repr=False)

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def is_trivial(self):
        return not self.invariant_factors

    def class_of(self, c):
        if not c.module.same_as(self.module) or c.degree != self.degree:
            raise ModuleMismatch("cochain is not over this module and degree")
        chk = is_cocycle(c)
        if not chk:
            raise NotACocycle("not a cocycle", witness=chk.witness)
        return self._coords(c)

    def element(self, coords):
        """Representative cocycle of the class with the given coordinates."""
        out = Cochain.zero(self.module, self.degree)
        for t, rep in zip(coords, self.representatives):
            out = out + rep.scale(int(t))
        return out

    def elements(self):
        for coords in product(*(range(m) for m in self.invariant_factors)):
            yield coords

    def describe(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{m}" for m in self.invariant_factors)


def cohomology_group(M, degree, check=False):
    """Compute ``H^degree(G, A)`` for degree 1 or 2 by Smith normal form.

    With ``check=True`` the brute-force enumeration also runs when the
    enumeration cap allows it, and any disagreement raises ``AssertionError``.
    """
    if degree not in (1, 2):
        raise InvalidInput("cohomology is computed in degrees 1 and 2")
    N, k = M.group.order, M.coeffs.rank
    e = M.coeffs.exponent
    if e == 1:
        H = CohomologyGroup(M, degree, [], [], lambda c: ())
        return H
    R = N ** degree * k
    mods = _row_moduli(M, degree)
    # cocycles: kernel of the row-scaled differential, computed mod e
    D = differential_matrix(M, degree)
    scale_out = e // _row_moduli(M, degree + 1)
    sf = smith_mod(D * scale_out[:, None] % e, e, track_rows=False)
    g = list(sf.d) + [e] * (R - len(sf.d))
    g = [int(x) for x in g[:R]]
    keep = [i for i in range(R) if g[i] > 1]
    gk = np.array([g[i] for i in keep], dtype=np.int64)
    step = e // gk
    Vinv = sf.Vinv[keep]
    Vk = sf.V[:, keep]

    def to_w(x):
        y = Vinv @ (np.asarray(x, dtype=np.int64) % e) % e
        if (y % step).any():
            raise NotACocycle("vector outside the cocycle lattice")
        return (y // step) % gk

    # coboundaries and the relations m_r * e_r, in cocycle coordinates
    cols = [np.diag(mods)]
    if degree >= 1:
        cols.append(differential_matrix(M, degree - 1))
    B = np.concatenate(cols, axis=1) % e
    W = np.stack([to_w(B[:, j]) for j in range(B.shape[1])], axis=1) if len(keep) else \
        np.zeros((0, B.shape[1]), dtype=np.int64)
    if len(keep) == 0:
        return CohomologyGroup(M, degree, [], [], lambda c: ())
    rel = np.concatenate([W, np.diag(gk)], axis=1)
    orders, gens, coords = cokernel_mod(rel, e)
    shape = (N,) * degree + (k,)
    reps = []
    for v in gens:
        x = Vk @ (step * (v % gk)) % e
        reps.append(Cochain(M, degree, (x % mods).reshape(shape)))

    def class_coords(c):
        return coords(to_w(c.flat))

    H = CohomologyGroup(M, degree, [int(o) for o in orders], reps, class_coords)
    if check:
        try:
            bf = brute_force_cohomology(M, degree)
        except CapExceeded:
            return H
        assert bf.invariant_factors == H.invariant_factors, (bf, H.invariant_factors)
        for rep, m in zip(reps, H.invariant_factors):
            assert is_cocycle(rep)
            assert bf.class_order(rep) == m
    return H


# ---------------------------------------------------------------------------
# brute force


@dataclass
class BruteForceCohomology:
    module: GModule
    degree: int
    cocycle_count: int
    coboundary_count: int
    invariant_factors: list
    _boundary_keys: np.ndarray = field(repr=False)
    _positions: tuple = field(repr=False)

    @property
    def order(self):
        return self.cocycle_count // self.coboundary_count

    def _key(self, arrays):
        A = self.module.coeffs
        k = A.rank
        key = np.zeros(len(arrays), dtype=np.int64)
        flat = arrays.reshape(len(arrays), -1, k)[:, self._positions, :]
        for p in range(flat.shape[1]):
            for j in range(k):
                key = key * A.moduli[j] + flat[:, p, j]
        return key

    def is_coboundary(self, c):
        v = normalize(c).values[None]
        return bool(np.isin(self._key(v), self._boundary_keys)[0])

    def class_order(self, c):
        v = normalize(c)
        t = 1
        while not self.is_coboundary(v.scale(t)):
            t += 1
        return t


def _normalized_positions(N, degree, identity):
    pos = []
    for i, args in enumerate(product(range(N), repeat=degree)):
        if identity not in args:
            pos.append(i)
    return tuple(pos)


def _enumerate(M, degree, positions, chunk=1 << 14):
    """Yield batches of all cochains supported on ``positions``."""
    N, A = M.group.order, M.coeffs
    k = A.rank
    P = len(positions)
    total = A.order ** P
    els = np.array(A.elements, dtype=np.int64).reshape(A.order, k)
    shape = (N,) * degree + (k,)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        batch = np.zeros((len(idx), N ** degree, k), dtype=np.int64)
        rest = idx.copy()
        for p in reversed(range(P)):
            batch[:, positions[p], :] = els[rest % A.order]
            rest //= A.order
        yield batch.reshape((len(idx),) + shape)


def _structure_from_order_counts(counts):
    """Invariant factors of an abelian group from ``{order: number of elements}``."""
    total = sum(counts.values())
    primes = []
    n, p = total, 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    divisors = []
    for p in primes:
        prev, j = 1, 1
        parts = []
        while True:
            c = _p_primary_count(counts, p, j)
            ratio = c // prev
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            if r == 0:
                break
            parts.append(r)
            prev = c
            j += 1
        # parts[j-1] = number of cyclic p-factors of order >= p^j
        for j, r in enumerate(parts, start=1):
            nxt = parts[j] if j < len(parts) else 0
            divisors.extend([p ** j] * (r - nxt))
    return invariant_factors(divisors)


def _p_primary_count(counts, p, j):
    """Number of elements killed by p^j, i.e. the p^j-torsion of the p-part."""
    return sum(v for o, v in counts.items() if (p ** j) % o == 0)


def brute_force_cohomology(M, degree):
    """Enumerate normalized cochains; independent oracle for small cases."""
    if degree not in (1, 2):
        raise InvalidInput("cohomology is computed in degrees 1 and 2")
    N, A = M.group.order, M.coeffs
    e = M.group.identity
    if degree == 1:
        # 1-cocycles vanish at the identity; coboundaries come from all of A
        pos_n = tuple(i for i in range(N) if i != e)
        pos_m = (0,)
    else:
        pos_n = _normalized_positions(N, 2, e)
        pos_m = tuple(i for i in range(N) if i != e)
    check_cap(A.order ** len(pos_n), "normalized cochain enumeration")
    check_cap(A.order ** len(pos_m), "normalized cochain enumeration")
    stub = BruteForceCohomology(M, degree, 0, 0, [], np.zeros(0, np.int64), pos_n)
    bkeys = []
    for batch in _enumerate(M, degree - 1, pos_m):
        bkeys.append(stub._key(_batched_differential(M, batch, degree - 1)))
    bkeys = np.unique(np.concatenate(bkeys))
    cocycles = []
    for batch in _enumerate(M, degree, pos_n):
        d = _batched_differential(M, batch, degree)
        ok = ~d.reshape(len(batch), -1).any(axis=1)
        cocycles.append(batch[ok])
    Z = np.concatenate(cocycles)
    # order of each cocycle's class
    orders = np.zeros(len(Z), dtype=np.int64)
    ex = A.exponent
    for t in sorted(d for d in range(1, ex + 1) if ex % d == 0):
        mask = (orders == 0) & np.isin(stub._key(t * Z % A.mod_array), bkeys)
        orders[mask] = t
    counts = {}
    for o, c in zip(*np.unique(orders, return_counts=True)):
        counts[int(o)] = int(c) // len(bkeys)
    inv = _structure_from_order_counts(counts)
    return BruteForceCohomology(M, degree, len(Z), len(bkeys), inv, bkeys, pos_n)


# ---------------------------------------------------------------------------
# change of group and coefficients


def kernel_invariants_module(q, M):
    """The quotient module ``A^U`` over ``H = G/U`` for ``q: G -> H`` and its inclusion."""
    if not q.is_surjective:
        raise NotSurjective("quotient map is not onto", witness=None)
    if q.source != M.group:
        raise ModuleMismatch("quotient map does not start at the module's group")
    G, H, A = q.source, q.target, M.coeffs
    U = q.kernel()
    fixed = [a for i, a in enumerate(A.elements)
             if all(M.action[u][i] == i for u in U)]
    B, inc = subgroup_structure(A, fixed)
    back = {inc(b): b for b in B.elements}
    lift = {}
    for g in range(G.order):
        lift.setdefault(q(g), g)
    tables = []
    for h in range(H.order):
        g = lift[h]
        tables.append(tuple(B.index(back[M.act(g, inc(b))]) for b in B.elements))
    return GModule(H, B, tuple(tables)), inc


def inflation(q, M, beta, inclusion=None):
    """Pull back a cocycle on a quotient ``H`` to ``G`` with values in ``A``.

    ``beta`` takes values in an H-module whose coefficients map into the
    kernel invariants of ``A`` via ``inclusion`` (identity when omitted).
    """
    if not q.is_surjective:
        raise NotSurjective("quotient map is not onto", witness=None)
    if beta.module.group != q.target or M.group != q.source:
        raise ModuleMismatch("groups of the quotient map and modules disagree")
    if inclusion is None:
        if beta.module.coeffs != M.coeffs:
            raise CoefficientMismatch("coefficients differ and no inclusion given")
        inclusion = AbelianHom.identity(M.coeffs)
    if inclusion.source != beta.module.coeffs or inclusion.target != M.coeffs:
        raise CoefficientMismatch("inclusion does not match the coefficient groups")
    Bm = beta.module
    for g in range(q.source.order):
        for b in Bm.coeffs.elements:
            if inclusion(Bm.act(q(g), b)) != M.act(g, inclusion(b)):
                raise CoefficientMismatch(
                    f"action of {g} on the image of {b} does not factor through the quotient",
                    witness=(g, b))
    qm = np.array(q.map, dtype=np.int64)
    n = beta.degree
    grids = np.indices((q.source.order,) * n)
    pulled = beta.values[tuple(qm[gr] for gr in grids)]
    return Cochain(M, n, inclusion.apply_array(pulled))


def pushforward(f, h, target):
    """Apply an equivariant coefficient map ``f`` to the values of ``h``."""
    M = h.module
    if target.group != M.group:
        raise ModuleMismatch("target module is over a different group")
    if f.source != M.coeffs or f.target != target.coeffs:
        raise ModuleMismatch("coefficient map does not match the modules")
    A = M.coeffs
    for g in range(M.group.order):
        for j in range(A.rank):
            gen = tuple(int(i == j) for i in range(A.rank))
            if f(M.act(g, gen)) != target.act(g, f(gen)):
                raise NotEquivariant(f"f(g.a) != g.f(a) for g={g}, a={gen}",
                                     witness=(g, gen))
    return Cochain(target, h.degree, f.apply_array(h.values))
