"""Primality testing and small-prime utilities."""

import random
from functools import lru_cache
from math import isqrt

MR_ROUNDS = 40


@lru_cache(maxsize=8)
def primes_below(n: int) -> tuple[int, ...]:
    """All primes p < n (sieve of Eratosthenes)."""
    if n <= 2:
        return ()
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = MR_ROUNDS, seed: int = 0) -> bool:
    """Probabilistic primality test.

    Trial division by the primes below 1000, a strong base-2 test, then
    ``rounds`` Miller-Rabin rounds with bases drawn from a seeded PRNG.
    A ``True`` answer is wrong with probability below ``4**-rounds``.
    """
    if n < 2:
        raise ValueError(f"is_prime expects n >= 2, got {n}")
    for q in primes_below(1000):
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < 1000 * 1000:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not _strong_probable_prime(n, 2, d, s):
        return False
    rng = random.Random(seed ^ n.bit_length())
    for _ in range(rounds):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, s):
            return False
    return True


def trial_factor(n: int, bound: int = 10**6) -> tuple[dict[int, int], int]:
    """Strip all prime factors below ``bound`` from ``n``.

    Returns ``(factors, cofactor)`` with ``factors`` mapping prime to exponent
    and ``cofactor`` free of primes below ``bound``.
    """
    n = abs(n)
    factors: dict[int, int] = {}
    if n == 0:
        raise ValueError("cannot factor 0")
    for q in primes_below(bound):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors[q] = e
    if 1 < n < bound * bound:
        # no prime factor below min(bound, sqrt(n)) left, so n is prime
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def is_squarefree(n: int) -> bool:
    """Squarefreeness of a small nonzero integer by trial division."""
    n = abs(n)
    if n == 0:
        return False
    q = 2
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        if n % q == 0:
            n //= q
        q += 1
    return True
