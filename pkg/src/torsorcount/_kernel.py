"""Compiled enumeration kernel for the torsor counter.

Same loop nest as the pure-Python engine in ``counter``, specialised to
int64.  Every intermediate is bounded by 3*B or B^2 (the alpha2*alpha3
product is formed only after both factors were filtered to <= B), so the
arithmetic stays below 2^63 for B <= INT64_SAFE_B; callers must enforce
that cap.  Heights are histogrammed into ``grid`` buckets so one pass
serves a whole series of bounds.

Work is partitioned deterministically: the (eta1, eta2, eta3) prefixes
are numbered in lexicographic order and a call processes those with
index % task_stride == task_start.  Counts are integers, so any
partition sums to the same total.
"""

import math

import numba
import numpy as np

# a2*a3 <= B^2 and c*(a1^2 % m) < m^2 <= B^2 must stay below 2^63
INT64_SAFE_B = 10**9


@numba.njit(cache=True, nogil=True, inline="always")
def _isqrt(n):
    if n <= 0:
        return 0
    x = int(math.sqrt(n))
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


@numba.njit(cache=True, nogil=True, inline="always")
def _icbrt(n):
    if n <= 0:
        return 0
    x = int(n ** (1.0 / 3.0))
    while x * x * x > n:
        x -= 1
    while (x + 1) * (x + 1) * (x + 1) <= n:
        x += 1
    return x


@numba.njit(cache=True, nogil=True, inline="always")
def _modinv(a, m):
    # extended Euclid; caller guarantees gcd(a, m) = 1, m >= 2
    g, x = m, 0
    r, s = a % m, 1
    while r:
        q = g // r
        g, r = r, g - q * r
        x, s = s, x - q * s
    return x % m


@numba.njit(cache=True, nogil=True)
def torsor_kernel(B, grid, out, task_start, task_stride):
    """Add, into out[i], the number of valid torsor points whose height h
    falls in (grid[i-1], grid[i]].  grid must be sorted with grid[-1] >= B.
    """
    task = -1
    for e1 in range(1, _isqrt(_isqrt(B)) + 1):
        m1a = e1 * e1 * e1 * e1
        for e2 in range(1, _isqrt(B // m1a) + 1):
            m1b = m1a * e2 * e2
            for e3 in range(1, _icbrt(B // m1b) + 1):
                task += 1
                if math.gcd(e2, e3) != 1:
                    continue
                if task % task_stride != task_start:
                    continue
                m1c = m1b * e3 * e3 * e3
                for e4 in range(1, _icbrt(B // m1c) + 1):
                    if math.gcd(e2, e4) != 1 or math.gcd(e3, e4) != 1:
                        continue
                    m1d = m1c * e4 * e4 * e4
                    for e5 in range(1, _isqrt(B // m1d) + 1):
                        if (
                            math.gcd(e1, e5) != 1
                            or math.gcd(e2, e5) != 1
                            or math.gcd(e4, e5) != 1
                        ):
                            continue
                        m1e = m1d * e5 * e5
                        for e6 in range(1, _isqrt(B // m1e) + 1):
                            if (
                                math.gcd(e1, e6) != 1
                                or math.gcd(e2, e6) != 1
                                or math.gcd(e3, e6) != 1
                                or math.gcd(e5, e6) != 1
                            ):
                                continue
                            mon1 = m1e * e6 * e6
                            F1 = e2
                            F2 = e3 * e5 * e5
                            m = e4 * e6 * e6
                            mon0 = e1 * e1 * e2 * e3 * e3 * e4 * e5 * e5
                            mon2 = e1 * e1 * e1 * e2 * e2 * e3 * e3 * e4 * e4 * e5 * e6
                            mon3 = e1 * e1 * e2 * e3 * e4 * e4 * e6 * e6
                            P1 = e1 * e3 * e4 * e5 * e6
                            P2 = e1 * e2 * e3 * e4 * e6
                            P3 = e1 * e2 * e3 * e4 * e5
                            A1 = B // mon2
                            # |x0|,|x3| <= B force eta2*a1^2 <= 2B/(e1^2 e3 e4)
                            A1y = _isqrt(2 * B // (e1 * e1 * e2 * e2 * e3 * e4))
                            if A1y < A1:
                                A1 = A1y
                            A2 = B // mon0
                            A3 = B // mon3
                            cc = 0  # m = 1: the a2 congruence is vacuous
                            if m > 1:
                                cc = (_modinv(F2 % m, m) * (F1 % m)) % m
                            for a1 in range(0, A1 + 1):
                                if math.gcd(a1, P1) != 1:
                                    continue
                                w = 2 if a1 > 0 else 1
                                r = (-(cc * ((a1 * a1) % m))) % m
                                kmax = (A2 - r) // m
                                kmin = -((A2 + r) // m)
                                f1a = F1 * a1 * a1
                                x2m = mon2 * a1
                                for k in range(kmin, kmax + 1):
                                    a2 = r + k * m
                                    a3 = -((f1a + F2 * a2) // m)
                                    x3 = mon3 * a3
                                    if x3 < 0:
                                        x3 = -x3
                                    if x3 > B:
                                        continue
                                    x4 = a2 * a3
                                    if x4 < 0:
                                        x4 = -x4
                                    if x4 > B:
                                        continue
                                    if math.gcd(a2, P2) != 1:
                                        continue
                                    if math.gcd(a3, P3) != 1:
                                        continue
                                    h = mon1
                                    if x2m > h:
                                        h = x2m
                                    x0 = mon0 * a2
                                    if x0 < 0:
                                        x0 = -x0
                                    if x0 > h:
                                        h = x0
                                    if x3 > h:
                                        h = x3
                                    if x4 > h:
                                        h = x4
                                    lo = 0
                                    hi = len(grid) - 1
                                    while lo < hi:
                                        mid = (lo + hi) // 2
                                        if grid[mid] >= h:
                                            hi = mid
                                        else:
                                            lo = mid + 1
                                    out[lo] += w


def run(B: int, grid, task_start: int = 0, task_stride: int = 1) -> np.ndarray:
    """Run the kernel for one partition; returns the bucket array."""
    if B > INT64_SAFE_B:
        raise OverflowError(
            f"compiled kernel is int64-safe only for B <= {INT64_SAFE_B}, got {B}"
        )
    g = np.asarray(grid, dtype=np.int64)
    out = np.zeros(len(g), dtype=np.int64)
    torsor_kernel(B, g, out, task_start, task_stride)
    return out
