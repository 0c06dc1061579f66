"""The von Mangoldt function on Z and its tensor version.

A table covers an integer interval and records, for every n in range, the
exact prime-power structure of |n| (a pair (p, k) with |n| = p^k) or the
fact that |n| is not a prime power.  Lambda(0) = Lambda(+-1) = 0.  Weights
are symmetric under negation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

SEGMENT = 1 << 18


def _base_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(2, limit + 1) if sieve[i]]


def _prime_power_arrays(a: int, b: int) -> tuple[np.ndarray, np.ndarray]:
    """(p, k) arrays for the nonnegative interval [a, b]; zeros elsewhere."""
    size = b - a + 1
    p_of = np.zeros(size, dtype=np.int64)
    k_of = np.zeros(size, dtype=np.int16)
    if b < 2:
        return p_of, k_of
    base = _base_primes(math.isqrt(b))
    for lo in range(max(a, 2), b + 1, SEGMENT):
        hi = min(lo + SEGMENT - 1, b)
        comp = np.zeros(hi - lo + 1, dtype=bool)
        for p in base:
            start = max(p * p, (lo + p - 1) // p * p)
            if start <= hi:
                comp[start - lo :: p] = True
        idx = np.nonzero(~comp)[0] + (lo - a)
        p_of[idx] = idx + a
        k_of[idx] = 1
    # proper prime powers p^k, k >= 2 (p <= sqrt(b), so p is a base prime)
    for p in base:
        q = p * p
        k = 2
        while q <= b:
            if q >= a:
                p_of[q - a] = p
                k_of[q - a] = k
            q *= p
            k += 1
    return p_of, k_of


@dataclass
class MangoldtTable:
    """Exact prime-power structure and Lambda values on [lo, hi]."""

    lo: int
    hi: int
    _p: np.ndarray = field(repr=False)
    _k: np.ndarray = field(repr=False)
    _lam: np.ndarray = field(repr=False)

    def _check(self, n: int) -> None:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"{n} outside the sieved range [{self.lo}, {self.hi}]")

    def prime_power(self, n: int) -> tuple[int, int] | None:
        """(p, k) with |n| = p^k, or None when |n| is not a prime power."""
        self._check(n)
        p = int(self._p[n - self.lo])
        return (p, int(self._k[n - self.lo])) if p else None

    def mangoldt(self, n: int) -> float:
        """Lambda(n) = log p when |n| is a power of the prime p, else 0."""
        self._check(n)
        return float(self._lam[n - self.lo])

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return bool(self._p[n - self.lo]) and self._k[n - self.lo] == 1

    def lam_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorized Lambda lookup."""
        if values.size and (values.min() < self.lo or values.max() > self.hi):
            raise ValueError("values outside the sieved range")
        return self._lam[values - self.lo]

    def k_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorized prime-power exponent lookup (0 for non prime powers)."""
        if values.size and (values.min() < self.lo or values.max() > self.hi):
            raise ValueError("values outside the sieved range")
        return self._k[values - self.lo]


def sieve(lo: int, hi: int) -> MangoldtTable:
    """Sieve the exact prime-power structure of every integer in [lo, hi]."""
    if lo > hi:
        raise ValueError("empty range")
    if lo >= 0:
        p_of, k_of = _prime_power_arrays(lo, hi)
    elif hi <= 0:
        p_neg, k_neg = _prime_power_arrays(-hi, -lo)
        p_of, k_of = p_neg[::-1].copy(), k_neg[::-1].copy()
    else:
        p_pos, k_pos = _prime_power_arrays(0, max(-lo, hi))
        n = np.abs(np.arange(lo, hi + 1))
        p_of, k_of = p_pos[n], k_pos[n]
    lam = np.where(p_of > 0, np.log(np.maximum(p_of, 1)), 0.0)
    return MangoldtTable(lo, hi, p_of, k_of, lam)


def lambda_tensor(v: Sequence[int], table: MangoldtTable) -> float:
    """Product of Lambda over the coordinates; 0 if any coordinate is not a
    prime power."""
    out = 1.0
    for x in v:
        lam = table.mangoldt(x)
        if lam == 0.0:
            return 0.0
        out *= lam
    return out


def _is_prime_int(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def is_prime_point(v: Sequence[int], table: MangoldtTable | None = None) -> bool:
    """True iff every coordinate is a prime up to sign."""
    if table is not None:
        return all(table.is_prime(x) for x in v)
    return all(_is_prime_int(x) for x in v)
