"""Smith normal form over Z/e.

Every lattice we meet contains ``e * Z^n`` for the exponent ``e`` of the
coefficient group, so all arithmetic can be carried out on residues mod e
using only operations that are unimodular over Z.  The result is a diagonal
form whose entries are divisors of ``e`` forming a divisibility chain (an
entry equal to ``e`` stands for a zero entry).
"""

from dataclasses import dataclass
from math import gcd

import numpy as np


@dataclass
class SmithForm:
    """``U @ M @ V == diag(d) (mod e)`` with ``U @ Uinv == V @ Vinv == 1``.

    ``d`` has length ``min(rows, cols)``; each entry divides ``e`` and
    ``d[i]`` divides ``d[i+1]``.  Row transforms are ``None`` when they were
    not requested.
    """

    modulus: int
    d: list
    U: np.ndarray
    Uinv: np.ndarray
    V: np.ndarray
    Vinv: np.ndarray


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def unit_normalizer(a, e):
    """A unit ``w`` mod ``e`` with ``w * a == gcd(a, e) (mod e)``."""
    g = gcd(a, e)
    m = e // g
    if m == 1:
        w0 = 1
    else:
        w0 = pow((a // g) % m, -1, m)
    w = w0
    while gcd(w, e) != 1:
        w += m
    return w % e if e > 1 else 0


class _Reducer:
    def __init__(self, M, e, track_rows):
        self.e = e
        self.A = np.array(M, dtype=np.int64).reshape(np.shape(M)) % e
        r, c = self.A.shape
        self.track_rows = track_rows
        if track_rows:
            self.U = np.eye(r, dtype=np.int64)
            self.Ui = np.eye(r, dtype=np.int64)
        else:
            self.U = self.Ui = None
        self.V = np.eye(c, dtype=np.int64)
        self.Vi = np.eye(c, dtype=np.int64)

    # row operations: A <- E A, U <- E U, Ui <- Ui E^-1
    def swap_rows(self, i, j):
        if i == j:
            return
        self.A[[i, j]] = self.A[[j, i]]
        if self.track_rows:
            self.U[[i, j]] = self.U[[j, i]]
            self.Ui[:, [i, j]] = self.Ui[:, [j, i]]

    def scale_row(self, i, w):
        e = self.e
        self.A[i] = self.A[i] * w % e
        if self.track_rows:
            winv = pow(w, -1, e) if e > 1 else 0
            self.U[i] = self.U[i] * w % e
            self.Ui[:, i] = self.Ui[:, i] * winv % e

    def add_rows(self, rows, t, q):
        """rows[k] += q[k] * row t (vectorized)."""
        e = self.e
        self.A[rows] = (self.A[rows] + np.outer(q, self.A[t])) % e
        if self.track_rows:
            self.U[rows] = (self.U[rows] + np.outer(q, self.U[t])) % e
            self.Ui[:, t] = (self.Ui[:, t] - self.Ui[:, rows] @ q) % e

    def combine_rows(self, t, i, s, x, a_g, b_g):
        e = self.e
        rt, ri = self.A[t].copy(), self.A[i].copy()
        self.A[t] = (s * rt + x * ri) % e
        self.A[i] = (-b_g * rt + a_g * ri) % e
        if self.track_rows:
            ut, ui = self.U[t].copy(), self.U[i].copy()
            self.U[t] = (s * ut + x * ui) % e
            self.U[i] = (-b_g * ut + a_g * ui) % e
            ct, ci = self.Ui[:, t].copy(), self.Ui[:, i].copy()
            self.Ui[:, t] = (a_g * ct + b_g * ci) % e
            self.Ui[:, i] = (-x * ct + s * ci) % e

    # column operations: A <- A F, V <- V F, Vi <- F^-1 Vi
    def swap_cols(self, i, j):
        if i == j:
            return
        self.A[:, [i, j]] = self.A[:, [j, i]]
        self.V[:, [i, j]] = self.V[:, [j, i]]
        self.Vi[[i, j]] = self.Vi[[j, i]]

    def add_cols(self, cols, t, q):
        """cols[k] += q[k] * col t."""
        e = self.e
        self.A[:, cols] = (self.A[:, cols] + np.outer(self.A[:, t], q)) % e
        self.V[:, cols] = (self.V[:, cols] + np.outer(self.V[:, t], q)) % e
        self.Vi[t] = (self.Vi[t] - q @ self.Vi[cols]) % e

    def combine_cols(self, t, j, s, x, a_g, b_g):
        e = self.e
        for M in (self.A, self.V):
            ct, cj = M[:, t].copy(), M[:, j].copy()
            M[:, t] = (s * ct + x * cj) % e
            M[:, j] = (-b_g * ct + a_g * cj) % e
        rt, rj = self.Vi[t].copy(), self.Vi[j].copy()
        self.Vi[t] = (a_g * rt + b_g * rj) % e
        self.Vi[j] = (-x * rt + s * rj) % e

    def normalize_pivot(self, t):
        a = int(self.A[t, t])
        w = unit_normalizer(a, self.e)
        if w != 1:
            self.scale_row(t, w)
        return int(self.A[t, t])

    def clear(self, t):
        """Clear row and column t; return False when the pivot changed."""
        e = self.e
        A = self.A
        g = self.normalize_pivot(t)
        col = A[t + 1:, t]
        nz = np.nonzero(col)[0] + t + 1
        if len(nz):
            vals = A[nz, t]
            div = vals % g == 0
            if div.any():
                self.add_rows(nz[div], t, (-(vals[div] // g)) % e)
            if not div.all():
                i = int(nz[~div][0])
                b = int(A[i, t])
                h, s, x = _xgcd(g, b)
                self.combine_rows(t, i, s % e, x % e, g // h, b // h)
                return False
        row = A[t, t + 1:]
        nz = np.nonzero(row)[0] + t + 1
        if len(nz):
            vals = A[t, nz]
            div = vals % g == 0
            if div.any():
                self.add_cols(nz[div], t, (-(vals[div] // g)) % e)
            if not div.all():
                j = int(nz[~div][0])
                b = int(A[t, j])
                h, s, x = _xgcd(g, b)
                self.combine_cols(t, j, s % e, x % e, g // h, b // h)
                return False
        return True

    def run(self):
        e = self.e
        A = self.A
        r, c = A.shape
        n = min(r, c)
        t = 0
        while t < n:
            sub = A[t:, t:]
            gs = np.gcd(sub, e)
            gs[sub == 0] = e
            if gs.min() == e:
                break
            i, j = np.unravel_index(int(np.argmin(gs)), gs.shape)
            self.swap_rows(t, t + int(i))
            self.swap_cols(t, t + int(j))
            while True:
                if not self.clear(t):
                    continue
                g = int(A[t, t])
                rest = A[t + 1:, t + 1:]
                bad = np.argwhere(rest % g != 0)
                if len(bad) == 0:
                    break
                i = t + 1 + int(bad[0][0])
                self.add_rows(np.array([t]), i, np.array([1]))
            t += 1
        d = []
        for k in range(n):
            v = int(A[k, k])
            d.append(gcd(v, e) if v else e)
        return d


def smith_mod(M, e, track_rows=True):
    """Diagonalize the integer matrix ``M`` over ``Z/e``."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if e == 1:
        r, c = M.shape
        z = lambda k: np.zeros((k, k), dtype=np.int64)
        return SmithForm(1, [1] * min(r, c), z(r) if track_rows else None,
                         z(r) if track_rows else None, z(c), z(c))
    red = _Reducer(M, e, track_rows)
    d = red.run()
    return SmithForm(e, d, red.U, red.Ui, red.V, red.Vi)


def cokernel_mod(M, e):
    """Structure of ``(Z/e)^r / colspan(M)``.

    Returns ``(orders, gens, coords)``: cyclic orders > 1 forming a
    divisibility chain, generator vectors (length r, mod e) and a function
    mapping a vector to its coordinates in those generators.
    """
    M = np.asarray(M, dtype=np.int64)
    r = M.shape[0]
    if M.shape[1] == 0:
        M = np.zeros((r, 1), dtype=np.int64)
    sf = smith_mod(M, e)
    d = list(sf.d) + [e] * (r - len(sf.d))
    keep = [i for i in range(r) if d[i] > 1]
    orders = [d[i] for i in keep]
    gens = [sf.Uinv[:, i] % e for i in keep]
    U = sf.U

    def coords(v):
        w = U @ (np.asarray(v, dtype=np.int64) % e) % e
        return tuple(int(w[i]) % d[i] for i in keep)

    return orders, gens, coords


def invariant_factors(orders):
    """Invariant factors (d1 | d2 | ...) of a product of cyclic groups."""
    from collections import defaultdict

    powers = defaultdict(list)
    for m in orders:
        n = m
        p = 2
        while p * p <= n:
            if n % p == 0:
                k = 1
                while n % p == 0:
                    n //= p
                    k *= p
                powers[p].append(k)
            p += 1
        if n > 1:
            powers[n].append(n)
    length = max((len(v) for v in powers.values()), default=0)
    factors = [1] * length
    for p, ks in powers.items():
        ks = sorted(ks)
        for i, k in enumerate(ks):
            factors[length - len(ks) + i] *= k
    return [f for f in factors if f > 1]
