"""Exact integer utilities shared by every module.

All arithmetic is done with Python integers, so intermediate products
(six eta's times alphas, up to ~B^2.5) can never overflow or wrap.  The
vectorised fast paths elsewhere justify their own int64 bounds and fall
back here when they cannot.
"""

from __future__ import annotations

import math

Factorization = list[tuple[int, int]]


def gcd_nonneg(a: int, b: int) -> int:
    """Nonnegative gcd with gcd(0, n) = |n| and gcd(0, 0) = 0."""
    return math.gcd(a, b)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [0, m).  m = 1 gives 0.

    Raises ValueError when gcd(a, m) != 1.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    try:
        return pow(a, -1, m)
    except ValueError:
        raise ValueError(f"{a} is not invertible modulo {m}") from None


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending (sieve of Eratosthenes)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if sieve[i]]


def factorize(n: int) -> Factorization:
    """Exact factorization of n >= 1 as ascending (prime, exponent) pairs.

    Trial division by 2, 3 and the 6k+-1 wheel; intended inputs stay below
    ~B^(1/2) where this is plenty fast.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out: Factorization = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def omega(n: int) -> int:
    """Number of distinct primes dividing n (omega(1) = 0)."""
    return len(factorize(n))


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0 (exact integer arithmetic)."""
    if n < 0 or k < 1:
        raise ValueError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = int(round(n ** (1.0 / k)))
    while x > 0 and x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def radical(n: int) -> int:
    """Product of the distinct primes dividing n (radical(1) = 1)."""
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)
