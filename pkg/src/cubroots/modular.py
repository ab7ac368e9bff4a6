"""Exact span tests for root-of-unity vectors via reduction modulo primes.

Entries of evaluation matrices are m-th roots of unity, so every minor is
an algebraic integer in Z[w].  Reducing modulo a prime p = 1 (mod m) sends
w to an m-th root of unity in F_p and is a ring homomorphism.  A minor that
is nonzero mod p is nonzero over Q(w).  Conversely a nonzero minor D has
|N(D)| <= H^phi(m), H the Hadamard bound, and it can vanish modulo at most
log_p |N(D)| of the primes.  With enough primes, the candidate is
independent over Q(w) iff it is independent modulo at least one of them.

Independence modulo one prime already certifies independence, so the first
prime carries the common case.  The others are brought up to date only when
a candidate looks dependent modulo every prime consulted so far.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .cyclo import cyclotomic_poly

PRIME_BITS = 24
# products of two residues are below 2^48; int64 sums of 2^14 of them cannot overflow
MAX_LENGTH = 2**14


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):  # deterministic below 3.4e14
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _primes_with_roots(m: int, count: int) -> tuple[tuple[int, int], ...]:
    """``count`` primes p = 1 (mod m) below 2^PRIME_BITS, each with a primitive m-th root."""
    out = []
    qs = _prime_factors(m)
    p = (2**PRIME_BITS - 1) // m * m + 1
    while len(out) < count:
        p -= m
        if p < 3:
            raise ArithmeticError(f"ran out of primes congruent to 1 mod {m}")
        if not _is_prime(p):
            continue
        for x in range(2, p):
            r = pow(x, (p - 1) // m, p)
            if all(pow(r, m // q, p) != 1 for q in qs):
                break
        out.append((p, r if m > 1 else 1))
    return tuple(out)


def primes_needed(n: int, m: int) -> int:
    """Number of primes whose product exceeds the norm bound for minors of size <= n."""
    phi = len(cyclotomic_poly(m)) - 1
    bits = phi * (n / 2) * math.log2(max(n, 1)) + 1
    return max(1, math.ceil(bits / (PRIME_BITS - 1)))


def fits(n: int, m: int) -> bool:
    return n <= MAX_LENGTH


class _PrimeEchelon:
    """Reduced row echelon form of the accepted vectors modulo one prime."""

    def __init__(self, n: int, m: int, p: int, root: int) -> None:
        self.p = p
        self.powers = np.array([pow(root, j, p) for j in range(m)], dtype=np.int64)
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []
        self.synced = 0  # number of accepted vectors already folded in
        self.good = True

    def reduce(self, residues: np.ndarray) -> np.ndarray:
        v = self.powers[residues]
        if self.pivots:
            v = v - v[self.pivots] @ self.rows
        return v % self.p

    def push(self, v: np.ndarray) -> None:
        """Fold in an already reduced vector; a zero vector retires the prime."""
        nz = np.flatnonzero(v)
        self.synced += 1
        if not len(nz):
            self.good = False
            return
        p, col = self.p, int(nz[0])
        row = v * pow(int(v[col]), p - 2, p) % p
        if self.pivots:
            self.rows = (self.rows - np.outer(self.rows[:, col], row) % p) % p
        self.rows = np.vstack([self.rows, row])
        self.pivots.append(col)


class ModularSpan:
    """Incremental span of residue vectors (entry r means w^r), decided exactly over Q(w)."""

    def __init__(self, n: int, m: int) -> None:
        if n > MAX_LENGTH:
            raise ValueError(f"vectors longer than {MAX_LENGTH} are not supported")
        self.n, self.m = n, m
        self._primes = _primes_with_roots(m, primes_needed(n, m))
        self._ech: list[_PrimeEchelon] = []
        self._accepted: list[np.ndarray] = []
        self._shapes: set[bytes] = set()

    def _shape(self, res: np.ndarray) -> bytes:
        # w^c * u has the same shape as u; equal shapes mean proportional vectors
        return ((res - res[0]) % self.m).astype(np.int32).tobytes() if len(res) else b""

    @property
    def rank(self) -> int:
        return len(self._accepted)

    def _echelons(self):
        """Yield up-to-date echelon forms of the surviving primes, creating them on demand."""
        for i in range(len(self._primes)):
            if i == len(self._ech):
                self._ech.append(_PrimeEchelon(self.n, self.m, *self._primes[i]))
            e = self._ech[i]
            while e.good and e.synced < len(self._accepted):
                e.push(e.reduce(self._accepted[e.synced]))
            if e.good:
                yield e

    def _witness(self, residues: np.ndarray):
        for e in self._echelons():
            v = e.reduce(residues)
            if v.any():
                return e, v
        return None, None

    def is_independent(self, residues) -> bool:
        res = np.asarray(residues, dtype=np.int64) % self.m
        if self.rank == self.n or self._shape(res) in self._shapes:
            return False
        return self._witness(res)[0] is not None

    def add(self, residues) -> bool:
        """Append the vector if it enlarges the span; report whether it did."""
        if self.rank == self.n:
            return False
        res = np.asarray(residues, dtype=np.int64) % self.m
        shape = self._shape(res)
        if shape in self._shapes:
            return False
        e, v = self._witness(res)
        if e is None:
            return False
        self._accepted.append(res)
        self._shapes.add(shape)
        e.push(v)
        return True
