"""Exact integer number theory: factorization, divisors, Moebius, Legendre, binomials.

Everything here is pure and exact; inputs stay small (trial division is
deliberate, see the size notes on each function).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: primes strictly increasing, exponents >= 1."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"non-canonical factorization for {self.value}")
            prev = p
            prod *= p ** e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")


@lru_cache(maxsize=None)
def factor(n: int) -> Factorization:
    """Trial-division factorization; intended for n up to ~10^7."""
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    m = n
    factors = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factor(n).factors
    return len(f) == 1 and f[0][1] == 1


def primes_upto(limit: int) -> list[int]:
    """All primes p <= limit, by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(limit + 1) if sieve[p]]


def mobius(n: int) -> int:
    """Moebius mu: 0 on non-squarefree n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError(f"mobius() needs n >= 1, got {n}")
    fs = factor(n).factors
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre() needs an odd prime modulus, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return r - p if r == p - 1 else r


def binomial_int(g: int, k: int) -> int:
    """Generalized binomial C(g, k) for integer g (possibly negative), k >= 0.

    Satisfies (1 - x)^g = sum_k C(g, k) (-x)^k as formal series.
    """
    if k < 0:
        raise ValueError(f"binomial_int() needs k >= 0, got {k}")
    if g >= 0:
        return math.comb(g, k)
    # C(g, k) = (-1)^k * C(k - g - 1, k)
    sign = -1 if k % 2 else 1
    return sign * math.comb(k - g - 1, k)
