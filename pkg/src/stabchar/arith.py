"""Small integer-arithmetic helpers shared across modules."""
from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, exponent), ...)."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorint(n))


def pi_part(n: int, pi) -> int:
    """Largest divisor of n composed of primes in pi."""
    m = 1
    for p, e in factorint(n):
        if p in pi:
            m *= p ** e
    return m


def pi_prime_part(n: int, pi) -> int:
    return n // pi_part(n, pi)


def is_pi_number(n: int, pi) -> bool:
    return pi_part(n, pi) == n


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    m = n
    for p, _ in factorint(n):
        m = m // p * (p - 1)
    return m


def p_exponent(n: int, p: int) -> int:
    """Largest i with p^i dividing n."""
    i = 0
    while n % p == 0:
        n //= p
        i += 1
    return i
