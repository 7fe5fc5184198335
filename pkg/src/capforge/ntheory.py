"""Small integer number theory helpers: primality, factorization, divisors."""

from __future__ import annotations

from functools import lru_cache

# Deterministic Miller-Rabin witness base, valid for all n < 3.3 * 10^24
# (covers the package-wide q < 2^63 cap with room to spare).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin with a fixed witness set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (prime, exponent)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    if n == 1:
        return ()
    out = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            from sympy import factorint

            for p, e in factorint(n).items():
                out[int(p)] = out.get(int(p), 0) + int(e)
    return tuple(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power(q: int):
    """Return (p, h) with q = p^h, or None if q is not a prime power."""
    if q < 2:
        return None
    if is_prime(q):
        return (q, 1)
    for h in range(2, q.bit_length() + 1):
        p = round(q ** (1.0 / h))
        for cand in (p - 1, p, p + 1):
            # a composite base may still split at a larger exponent (32^2 = 2^10)
            if cand >= 2 and cand**h == q and is_prime(cand):
                return (cand, h)
    return None


def next_prime_congruent(lower: int, residue: int, modulus: int) -> int:
    """Smallest prime >= lower congruent to residue mod modulus."""
    n = lower + (residue - lower) % modulus
    while not is_prime(n):
        n += modulus
    return n
