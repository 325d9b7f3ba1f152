"""Finite fields, Kummer quotients and the norm test for cyclic algebras.

Field elements are integers ``0 <= x < q``; ``coeffs(x)`` gives the
coefficients (lowest degree first) in base ``p``.  Multiplication goes
through discrete-log tables built from a verified generator.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from .caps import check_cap
from .errors import BadCongruence, InvalidInput, NotPrime, Reducible

MAX_FIELD_SIZE = 1 << 16


class FiniteField:
    """``F_p[X]/(modulus)``; for ``k == 1`` simply the residues mod ``p``."""

    def __init__(self, p, k=1, modulus=None):
        p, k = int(p), int(k)
        if not isprime(p):
            raise NotPrime(f"{p} is not prime", witness=p)
        if k < 1 or p ** k > MAX_FIELD_SIZE:
            raise InvalidInput(f"field size {p}^{k} outside 2..{MAX_FIELD_SIZE}")
        self.p, self.k, self.q = p, k, p ** k
        if k == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = _first_irreducible(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise InvalidInput("modulus must be monic of degree k, lowest coefficient first")
            if not gf_irreducible_p([ZZ(c) for c in reversed(modulus)], p, ZZ):
                raise Reducible(f"modulus {modulus} is reducible mod {p}", witness=modulus)
            self.modulus = modulus
        self._digits = np.array([self.coeffs(x) for x in range(self.q)], dtype=np.int64)
        self._weights = p ** np.arange(k, dtype=np.int64)
        self.generator = self._find_generator()
        exp = np.zeros(self.q - 1, dtype=np.int64)
        cur = 1
        for i in range(self.q - 1):
            exp[i] = cur
            cur = self._slow_mul(cur, self.generator)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.q - 1)
        if cur != 1 or (log[1:] < 0).any():
            raise InvalidInput("generator search failed")
        self._exp, self._log = exp, log

    def __repr__(self):
        return f"F_{self.q}" if self.k == 1 else f"F_{self.p}^{self.k}"

    def coeffs(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def element(self, coeffs):
        coeffs = list(coeffs)
        coeffs += [0] * (self.k - len(coeffs))
        if len(coeffs) > self.k:
            raise InvalidInput("too many coefficients")
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def from_int(self, c):
        return int(c) % self.p

    @property
    def elements(self):
        return range(self.q)

    @property
    def units(self):
        return range(1, self.q)

    def _poly(self, x):
        return [ZZ(c) for c in reversed(self.coeffs(x))]

    def _slow_mul(self, x, y):
        if self.k == 1:
            return x * y % self.p
        mod = [ZZ(c) for c in reversed(self.modulus)]
        r = gf_rem(gf_mul(self._poly(x), self._poly(y), self.p, ZZ), mod, self.p, ZZ)
        return self.element(reversed([int(c) for c in r]))

    def _slow_pow(self, x, e):
        out, base = 1, x
        while e:
            if e & 1:
                out = self._slow_mul(out, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return out

    def _find_generator(self):
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorint(n))
        for x in range(2, self.q):
            if all(self._slow_pow(x, n // r) != 1 for r in primes):
                return x
        raise InvalidInput("no generator found")

    def add(self, x, y):
        return int(((self._digits[x] + self._digits[y]) % self.p) @ self._weights)

    def neg(self, x):
        return int(((-self._digits[x]) % self.p) @ self._weights)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        return int(self._exp[(self._log[x] + self._log[y]) % (self.q - 1)])

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self._exp[(-self._log[x]) % (self.q - 1)])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e):
        if x == 0:
            return 0 if e > 0 else 1
        return int(self._exp[(self._log[x] * e) % (self.q - 1)])

    def log(self, x):
        if x == 0:
            raise InvalidInput("zero has no logarithm")
        return int(self._log[x])

    def exp(self, i):
        return int(self._exp[i % (self.q - 1)])

    def order(self, x):
        return (self.q - 1) // gcd(self.log(x), self.q - 1)

    def root_of_unity(self, n):
        """The primitive ``n``-th root ``g^((q-1)/n)`` for the field generator ``g``."""
        if (self.q - 1) % n:
            raise BadCongruence(f"{n} does not divide {self.q - 1}", witness=(self.q, n))
        return self.exp((self.q - 1) // n)


def _first_irreducible(p, k):
    for idx in range(p ** k):
        low = [(idx // p ** i) % p for i in range(k)]
        if gf_irreducible_p([ZZ(1)] + [ZZ(c) for c in reversed(low)], p, ZZ):
            return tuple(low) + (1,)
    raise Reducible(f"no irreducible polynomial of degree {k} mod {p}")


def finite_field(p, k=1, modulus=None):
    """Field of ``p**k`` elements with a verified modulus and generator."""
    return FiniteField(p, k, modulus)


# ---------------------------------------------------------------------------
# Kummer quotients


def power_quotient_order(p, n):
    """``|F_p^x / (F_p^x)^n|`` by enumerating the ``n``-th powers."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime", witness=p)
    if n < 1:
        raise InvalidInput("n must be positive")
    powers = {pow(x, n, p) for x in range(1, p)}
    return (p - 1) // len(powers)


@dataclass(frozen=True)
class KummerReport:
    p: int
    n: int
    quotient_order: int
    gcd_order: int
    h1_order: int

    @property
    def agrees(self):
        return self.quotient_order == self.gcd_order == self.h1_order


def kummer_h1_check(p, n):
    """Compare the power quotient of ``F_p^x`` with ``gcd(n, p-1)`` and with
    ``|H^1(Z/n, Z/n)|`` for the trivial action (requires ``n | p-1``)."""
    from .algebra import AbelianGroup, group_from_cyclic_factors, trivial_module
    from .cohomology import cohomology_group

    if not isprime(p):
        raise NotPrime(f"{p} is not prime", witness=p)
    if n < 1 or (p - 1) % n:
        raise BadCongruence(f"{n} does not divide {p - 1}", witness=(p, n))
    M = trivial_module(group_from_cyclic_factors((n,)), AbelianGroup((n,)))
    return KummerReport(p, n, power_quotient_order(p, n), gcd(n, p - 1),
                        cohomology_group(M, 1).order)


# ---------------------------------------------------------------------------
# norm criterion


@dataclass(frozen=True)
class SplitVerdict:
    p: int
    n: int
    a: int
    b: int
    split: bool
    witness: tuple   # coefficients of e in F_p[X]/(X^n - a), lowest first
    reason: str

    def describe(self):
        if not self.split:
            return f"({self.a},{self.b}) non-split: {self.b} is not a norm"
        return f"({self.a},{self.b}) split, N({_poly_str(self.witness)}) = {self.b} [{self.reason}]"


def _poly_str(c):
    terms = [f"{v}" if i == 0 else f"{v}t^{i}" if i > 1 else f"{v}t"
             for i, v in enumerate(c) if v]
    return "+".join(terms) or "0"


def kummer_ring_norms(p, n, a):
    """Norms of all elements of ``F_p[X]/(X^n - a)`` under ``theta -> zeta theta``.

    Row ``i`` of the returned element array has the coefficients of the
    element with index ``sum c_j p^j``.
    """
    F = FiniteField(p)
    zeta = F.root_of_unity(n)
    check_cap(p ** n, "Kummer ring enumeration")
    idx = np.arange(p ** n, dtype=np.int64)
    elems = np.stack([(idx // p ** j) % p for j in range(n)], axis=1)
    zpow = np.array([pow(zeta, j, p) for j in range(n)], dtype=np.int64)

    def mul(x, y):
        z = np.zeros_like(x)
        for i in range(n):
            for j in range(n):
                c = x[:, i] * y[:, j] % p
                if i + j >= n:
                    c = c * a % p
                z[:, (i + j) % n] = (z[:, (i + j) % n] + c) % p
        return z

    norm = elems.copy()
    conj = elems.copy()
    for _ in range(n - 1):
        conj = conj * zpow % p
        norm = mul(norm, conj)
    if (norm[:, 1:] != 0).any():
        raise InvalidInput("norm does not land in the base field")
    return elems, norm[:, 0]


def cyclic_algebra_split(p, n, a, b):
    """Decide whether ``b`` is a norm from ``F_p[X]/(X^n - a)``.

    The search is exhaustive; when ``X^n - a`` is reducible the ring is not a
    field and the verdict carries the reason ``DegenerateKummer``.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime", witness=p)
    if n < 1 or (p - 1) % n:
        raise BadCongruence(f"{n} does not divide {p - 1}", witness=(p, n))
    a, b = int(a) % p, int(b) % p
    if a == 0 or b == 0:
        raise InvalidInput("a and b must be nonzero")
    elems, norms = kummer_ring_norms(p, n, a)
    reducible = n > 1 and not gf_irreducible_p([ZZ(1)] + [ZZ(0)] * (n - 1) + [ZZ(-a % p)], p, ZZ)
    reason = "DegenerateKummer" if reducible else "norm witness"
    hits = np.nonzero(norms == b)[0]
    if len(hits):
        return SplitVerdict(p, n, a, b, True, tuple(int(c) for c in elems[hits[0]]), reason)
    return SplitVerdict(p, n, a, b, False, None, reason)
