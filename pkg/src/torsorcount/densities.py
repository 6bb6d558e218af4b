"""Non-archimedean densities of the torsor count.

For a prime p, which of the eta's it divides falls into twelve admissible
patterns (anything else violates the Dynkin coprimality conditions):

    case 0: none          case i: eta1          case ii: eta2
    case iii: eta3        case iv: eta4         case v: eta5
    case vi: eta6         case vii: eta1,eta2   case viii: eta1,eta3
    case ix: eta1,eta4    case x: eta3,eta5     case xi: eta4,eta6

Writing a2, a3 in terms of a free parameter c3 (a2 = c3*F3 - c1*a1^2*F1,
a3 = c2*a1^2*F1 - c3*F2, where c1*F2 = 1 + c2*F3), each prime excludes
zero, one or two of p consecutive values of c3:

    theta1_p = 1 - 2/p   in case i,
               1 - 1/p   in cases ii, iii, iv, vii, viii, ix, x, xi,
               1         in cases 0, v and vi.

A prime dividing only eta6 leaves a2 divisible-free automatically and
puts no condition on a3, so its factor is 1; only with that value does
the case sum collapse to the local factor 1 + 6/p + 1/p^2 at the
critical point.  theta2 accounts for the a1 coprimality: each prime
dividing eta1*eta3*eta4*eta5*eta6 thins a1 by 1 - 1/p.

Summing theta over all eta with a fixed weighted monomial yields the
Dirichlet coefficients Delta(n) and, via the Euler product, the constant
G(0) = prod_p (1 - 1/p)^6 (1 + 6/p + 1/p^2).
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .intkit import factorize, mod_inverse, primes_up_to
from .torsor import ETA_COPRIME_PAIRS

Eta = tuple[int, int, int, int, int, int]
ThetaValue = Fraction

# exponent of eta_i in the height monomial eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2
WEIGHTS = (4, 2, 3, 3, 2, 2)


class PrimeCase(enum.Enum):
    CASE_0 = "case0"
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    VI = "vi"
    VII = "vii"
    VIII = "viii"
    IX = "ix"
    X = "x"
    XI = "xi"
    FORBIDDEN = "forbidden"


_PATTERN_TO_CASE = {
    frozenset(): PrimeCase.CASE_0,
    frozenset({1}): PrimeCase.I,
    frozenset({2}): PrimeCase.II,
    frozenset({3}): PrimeCase.III,
    frozenset({4}): PrimeCase.IV,
    frozenset({5}): PrimeCase.V,
    frozenset({6}): PrimeCase.VI,
    frozenset({1, 2}): PrimeCase.VII,
    frozenset({1, 3}): PrimeCase.VIII,
    frozenset({1, 4}): PrimeCase.IX,
    frozenset({3, 5}): PrimeCase.X,
    frozenset({4, 6}): PrimeCase.XI,
}

# c3 residues excluded mod p, per case
_EXCLUDED = {
    PrimeCase.CASE_0: 0,
    PrimeCase.I: 2,
    PrimeCase.II: 1,
    PrimeCase.III: 1,
    PrimeCase.IV: 1,
    PrimeCase.V: 0,
    PrimeCase.VI: 0,
    PrimeCase.VII: 1,
    PrimeCase.VIII: 1,
    PrimeCase.IX: 1,
    PrimeCase.X: 1,
    PrimeCase.XI: 1,
}


def classify_prime(p: int, eta: Sequence[int]) -> PrimeCase:
    """Divisibility pattern of p across (eta1..eta6)."""
    pattern = frozenset(i for i in range(1, 7) if eta[i - 1] % p == 0)
    return _PATTERN_TO_CASE.get(pattern, PrimeCase.FORBIDDEN)


def _eta_primes(eta: Sequence[int]) -> list[int]:
    ps: set[int] = set()
    for e in eta:
        for p, _ in factorize(e):
            ps.add(p)
    return sorted(ps)


def theta1(eta: Sequence[int]) -> ThetaValue:
    """Density of admissible c3 residues, as an exact rational in [0, 1]."""
    out = Fraction(1)
    for p in _eta_primes(eta):
        case = classify_prime(p, eta)
        if case is PrimeCase.FORBIDDEN:
            return Fraction(0)
        out *= 1 - Fraction(_EXCLUDED[case], p)
    return out


def theta2(eta: Sequence[int]) -> ThetaValue:
    """Density of admissible a1: (1 - 1/p) per prime of eta1*eta3*eta4*eta5*eta6."""
    e1, _, e3, e4, e5, e6 = eta
    out = Fraction(1)
    for p, _ in factorize(e1 * e3 * e4 * e5 * e6):
        out *= 1 - Fraction(1, p)
    return out


def coprim_eta(eta: Sequence[int]) -> bool:
    """Pairwise coprimality of the eta's along non-adjacent Dynkin pairs."""
    return all(math.gcd(eta[i - 1], eta[j - 1]) == 1 for i, j in ETA_COPRIME_PAIRS)


def theta(eta: Sequence[int]) -> ThetaValue:
    """theta1 * theta2 when the eta coprimality conditions hold, else 0."""
    if not coprim_eta(eta):
        return Fraction(0)
    t1 = theta1(eta)
    if t1 == 0:
        return Fraction(0)
    return t1 * theta2(eta)


def _c1_c2(eta: Sequence[int]) -> tuple[int, int, int, int, int]:
    e1, e2, e3, e4, e5, e6 = eta
    F1, F2, F3 = e2, e3 * e5 * e5, e4 * e6 * e6
    c1 = mod_inverse(F2 % F3, F3) if F3 > 1 else 0
    c2 = (c1 * F2 - 1) // F3
    return F1, F2, F3, c1, c2


def admissible_c3_count(eta: Sequence[int], alpha1: int) -> tuple[int, int]:
    """Exact residue count behind theta1: (allowed, modulus).

    With m the product of the distinct primes dividing eta1*...*eta6,
    counts residues c3 mod m for which a2 = c3*F3 - c1*a1^2*F1 and
    a3 = c2*a1^2*F1 - c3*F2 avoid every prime of m that the respective
    coprimality condition covers.  The conditions only constrain c3 mod p,
    so the count over c3 mod m is the product of per-prime counts (CRT);
    allowed / modulus = theta1(eta) exactly.
    """
    eta = tuple(eta)
    if not coprim_eta(eta):
        raise ValueError(f"eta {eta} violates the coprimality conditions")
    e1, e2, e3, e4, e5, e6 = eta
    if math.gcd(alpha1, e1 * e3 * e4 * e5 * e6) != 1:
        raise ValueError(f"alpha1 = {alpha1} shares a factor with eta1*eta3*eta4*eta5*eta6")
    F1, F2, F3, c1, c2 = _c1_c2(eta)
    P2 = e1 * e2 * e3 * e4 * e6
    P3 = e1 * e2 * e3 * e4 * e5
    base = c1 * alpha1 * alpha1 * F1
    base3 = c2 * alpha1 * alpha1 * F1
    allowed, modulus = 1, 1
    for p in _eta_primes(eta):
        good = 0
        for c3 in range(p):
            a2 = c3 * F3 - base
            a3 = base3 - c3 * F2
            if P2 % p == 0 and a2 % p == 0:
                continue
            if P3 % p == 0 and a3 % p == 0:
                continue
            good += 1
        allowed *= good
        modulus *= p
    return allowed, modulus


def admissible_c3_count_direct(eta: Sequence[int], alpha1: int) -> tuple[int, int]:
    """Same count by direct enumeration of c3 mod m (small moduli only)."""
    eta = tuple(eta)
    e1, e2, e3, e4, e5, e6 = eta
    F1, F2, F3, c1, c2 = _c1_c2(eta)
    primes = _eta_primes(eta)
    p2_primes = [p for p in primes if (e1 * e2 * e3 * e4 * e6) % p == 0]
    p3_primes = [p for p in primes if (e1 * e2 * e3 * e4 * e5) % p == 0]
    m = 1
    for p in primes:
        m *= p
    good = 0
    for c3 in range(m):
        a2 = c3 * F3 - c1 * alpha1 * alpha1 * F1
        a3 = c2 * alpha1 * alpha1 * F1 - c3 * F2
        if all(a2 % p for p in p2_primes) and all(a3 % p for p in p3_primes):
            good += 1
    return good, m


def local_factor(p: int, s: float) -> float:
    """Local Euler factor F_p(s + 1/3) of the torsor Dirichlet series.

    Case-by-case sum over the twelve patterns; at s = 0 it collapses to
    1 + 6/p + 1/p^2.  The two-eta cases x and xi carry denominator
    (p^(3s+1) - 1)(p^(2s+1) - 1) -- one factor per variable weight.
    """
    if s < 0:
        raise ValueError(f"s must be >= 0, got {s}")
    q2 = p ** (2 * s + 1) - 1
    q3 = p ** (3 * s + 1) - 1
    q4 = p ** (4 * s + 1) - 1
    u = 1 - 1 / p
    return math.fsum(
        [
            1.0,
            u / q4 * ((1 - 2 / p) + u / q2 + 2 * u / q3),  # cases i, vii, viii+ix
            u / q2,  # case ii
            2 * u * u / q3,  # cases iii + iv
            2 * u / q2,  # cases v + vi
            2 * u * u / (q3 * q2),  # cases x + xi
        ]
    )


def _pattern_reps() -> list[tuple[int, ...]]:
    singles = [(i,) for i in range(1, 7)]
    pairs = [(1, 2), (1, 3), (1, 4), (3, 5), (4, 6)]
    return singles + pairs


def local_factor_bruteforce(p: int, s: float, emax: int) -> float:
    """Truncated lattice sum over eta's that are powers of p.

    Sums theta(eta) / prod eta_i^(w_i*s + 1) over all tuples whose
    divisibility pattern is admissible, with exponents up to emax; the
    classification goes through the exact theta machinery.
    """
    if emax < 1:
        raise ValueError(f"emax must be >= 1, got {emax}")
    terms = [1.0]
    for pattern in _pattern_reps():
        if len(pattern) == 1:
            (i,) = pattern
            for e in range(1, emax + 1):
                eta = [1] * 6
                eta[i - 1] = p**e
                terms.append(float(theta(tuple(eta))) * p ** (-e * (WEIGHTS[i - 1] * s + 1)))
        else:
            i, j = pattern
            for ei in range(1, emax + 1):
                for ej in range(1, emax + 1):
                    eta = [1] * 6
                    eta[i - 1] = p**ei
                    eta[j - 1] = p**ej
                    terms.append(
                        float(theta(tuple(eta)))
                        * p ** (-ei * (WEIGHTS[i - 1] * s + 1))
                        * p ** (-ej * (WEIGHTS[j - 1] * s + 1))
                    )
    return math.fsum(terms)


def local_factor_tail_bound(p: int, s: float, emax: int) -> float:
    """Upper bound on what local_factor_bruteforce truncates away.

    Each pattern contributes a geometric series in the exponents with
    0 <= theta <= 1, so the missing mass is at most the full geometric
    sum minus its truncation, summed over the eleven nonempty patterns.
    """

    def full(w: float) -> float:
        r = p ** -(w * s + 1)
        return r / (1 - r)

    def trunc(w: float) -> float:
        r = p ** -(w * s + 1)
        return r * (1 - r**emax) / (1 - r)

    bound = 0.0
    for pattern in _pattern_reps():
        if len(pattern) == 1:
            w = WEIGHTS[pattern[0] - 1]
            bound += full(w) - trunc(w)
        else:
            wi, wj = (WEIGHTS[k - 1] for k in pattern)
            bound += full(wi) * full(wj) - trunc(wi) * trunc(wj)
    return bound


# sup over primes of p^2 * |log((1-1/p)^6 (1+6/p+1/p^2))|.  Expanding,
# log f = -20/p^2 + 64/p^3 - 290/p^4 - ..., so p^2 |log f| = 20 - 64/p +
# 290/p^2 - ... stays below 20 for p >= 5; p = 2 and 3 give 10.9 and 11.7.
_G0_LOG_C = 20.0


def euler_product_G0(P: int) -> tuple[float, float]:
    """Truncated product over p <= P of (1-1/p)^6 (1+6/p+1/p^2), with a
    relative tail bound.

    |log factor| <= C/p^2 with C = 20, and sum_{p > P} 1/p^2 is bounded by
    partial summation against pi(x) < 1.25506 x / log x, giving
    2.51012 / (P log P); the reported bound is expm1 of the product.
    """
    if P < 2:
        raise ValueError(f"P must be >= 2, got {P}")
    value = 1.0
    for p in primes_up_to(P):
        value *= (1 - 1 / p) ** 6 * (1 + 6 / p + 1 / (p * p))
    tail = math.expm1(_G0_LOG_C * 2.51012 / (P * math.log(P)))
    return value, tail


@lru_cache(maxsize=None)
def _local_delta(p: int, a: int) -> Fraction:
    """Sum of theta(eta)/prod(eta) over eta = powers of p with weighted
    exponent total a: the local factor of delta_coeff at p^a."""
    if a == 0:
        return Fraction(1)
    total = Fraction(0)
    for pattern in _pattern_reps():
        if len(pattern) == 1:
            (i,) = pattern
            w = WEIGHTS[i - 1]
            if a % w == 0 and a >= w:
                eta = [1] * 6
                eta[i - 1] = p ** (a // w)
                total += theta(tuple(eta)) / Fraction(p) ** (a // w)
        else:
            i, j = pattern
            wi, wj = WEIGHTS[i - 1], WEIGHTS[j - 1]
            ei = 1
            while wi * ei < a:
                rem = a - wi * ei
                if rem % wj == 0:
                    ej = rem // wj
                    eta = [1] * 6
                    eta[i - 1] = p**ei
                    eta[j - 1] = p**ej
                    total += theta(tuple(eta)) / Fraction(p) ** (ei + ej)
                ei += 1
    return total


def delta_coeff(n: int) -> Fraction:
    """Exact coefficient sum_{eta monomial = n} theta(eta) / prod(eta_i).

    Multiplicative in n, so it is assembled from local sums per prime
    power; Delta(n) = n^(1/3) * delta_coeff(n).  Nonzero only when every
    prime exponent of n is representable by the weights (4,2,3,3,2,2) on
    an admissible pattern -- in particular n must be squarefull.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = Fraction(1)
    for p, a in factorize(n):
        local = _local_delta(p, a)
        if local == 0:
            return Fraction(0)
        out *= local
    return out


def delta_coeff_bruteforce(n: int) -> Fraction:
    """Independent oracle for delta_coeff: recursive divisor enumeration
    of all eta with eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2 = n."""

    total = Fraction(0)

    def rec(slot: int, remaining: int, eta: list[int]):
        nonlocal total
        if slot == 6:
            if remaining == 1:
                t = theta(tuple(eta))
                if t:
                    prod = 1
                    for e in eta:
                        prod *= e
                    total += t / prod
            return
        w = WEIGHTS[slot]
        d = 1
        while d**w <= remaining:
            if remaining % (d**w) == 0:
                eta.append(d)
                rec(slot + 1, remaining // (d**w), eta)
                eta.pop()
            d += 1

    rec(0, n, [])
    return total


def squarefull_up_to(B: int) -> list[int]:
    """Ascending squarefull numbers <= B (every prime exponent >= 2),
    including 1: the support of delta_coeff."""
    out = {1}
    b = 1
    while b**3 <= B:
        a = 1
        while a * a * b**3 <= B:
            out.add(a * a * b**3)
            a += 1
        b += 1
    return sorted(out)


def M_partial(t: int) -> float:
    """Partial sum of the Dirichlet coefficients: sum_{n <= t} Delta(n)."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return math.fsum(
        n ** (1.0 / 3.0) * float(delta_coeff(n)) for n in squarefull_up_to(t)
    )


def approx_count(B: int, g2_evaluator: Callable[[float], float] | None = None) -> float:
    """Main-term approximation B^(2/3) * sum_{n <= B} Delta(n) g2((n/B)^(1/3)).

    This is what the fibre-by-fibre density analysis predicts for N(B) up
    to an O(B (log B)^3) error; comparing it with count_torsor is the
    main diagnostic of the density machinery.
    """
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    if g2_evaluator is None:
        from .archimedean import g2_cached

        g2_evaluator = g2_cached
    terms = []
    for n in squarefull_up_to(B):
        dc = delta_coeff(n)
        if dc == 0:
            continue
        terms.append(n ** (1.0 / 3.0) * float(dc) * g2_evaluator((n / B) ** (1.0 / 3.0)))
    return B ** (2.0 / 3.0) * math.fsum(terms)
