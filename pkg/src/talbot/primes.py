"""Deterministic primality and small prime enumeration.

Miller-Rabin with the fixed witness set that is proven exact for all
n < 3.3e24, which covers every modulus this package can afford anyway.
"""

from __future__ import annotations

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start: n + 1: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def primes_in(lo: float, hi: float) -> list[int]:
    """Primes q with lo <= q <= hi (inclusive on both ends)."""
    import math

    a = max(2, math.ceil(lo))
    b = math.floor(hi)
    return [q for q in range(a, b + 1) if is_prime(q)]


def largest_prime_in(lo: float, hi: float) -> int | None:
    import math

    a = max(2, math.ceil(lo))
    for q in range(math.floor(hi), a - 1, -1):
        if is_prime(q):
            return q
    return None
