"""The split quartic del Pezzo surface S in P^4 with a D4 singularity.

S is cut out by the two quadrics

    q1 = x0*x3 - x1*x4,        q2 = x0*x1 + x1*x3 + x2^2.

Rational points are primitive integer 5-vectors modulo sign; the
anticanonical height of a point is max_j |x_j|.  The surface contains
exactly two lines, E5 = {x0=x1=x2=0} and E6 = {x1=x2=x3=0}, meeting in
the singular point q = (0:0:0:0:1); the open complement of the lines is
the locus x1 != 0, isomorphic to A^2 via the projection (x0:x2:x1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .intkit import factorize

# oracle_count guards its int64 arithmetic with this bound
_ORACLE_MAX_B = 100_000


class PointClass(enum.Enum):
    ON_E5 = "on_E5"
    ON_E6 = "on_E6"
    SINGULAR_Q = "singular_q"
    INTERIOR = "interior"


def evaluate_forms(x: tuple[int, int, int, int, int]) -> tuple[int, int]:
    """Values (q1, q2) of the two defining quadrics; (0, 0) iff x lies on S."""
    x0, x1, x2, x3, x4 = x
    return x0 * x3 - x1 * x4, x0 * x1 + x1 * x3 + x2 * x2


@dataclass(frozen=True)
class SurfacePoint:
    """Primitive, sign-canonical integer point on S.

    Canonical form: gcd of the coordinates is 1 and the first nonzero
    coordinate is positive (representing the identification x ~ -x).
    """

    x0: int
    x1: int
    x2: int
    x3: int
    x4: int

    def __post_init__(self):
        c = self.coords
        if all(v == 0 for v in c):
            raise ValueError("zero vector is not a projective point")
        g = 0
        for v in c:
            g = math.gcd(g, v)
        if g != 1:
            raise ValueError(f"{c} is not primitive (content {g})")
        first = next(v for v in c if v != 0)
        if first < 0:
            raise ValueError(f"{c} is not sign-canonical")
        if evaluate_forms(c) != (0, 0):
            raise ValueError(f"{c} does not lie on the surface")

    @property
    def coords(self) -> tuple[int, int, int, int, int]:
        return (self.x0, self.x1, self.x2, self.x3, self.x4)


def canonicalize(x: tuple[int, int, int, int, int]) -> SurfacePoint:
    """Divide by the content and fix the sign of the first nonzero coordinate.

    Idempotent, and canonicalize(-x) == canonicalize(x).  Rejects the zero
    vector and vectors not on S.
    """
    if all(v == 0 for v in x):
        raise ValueError("cannot canonicalize the zero vector")
    g = 0
    for v in x:
        g = math.gcd(g, v)
    x = tuple(v // g for v in x)
    first = next(v for v in x if v != 0)
    if first < 0:
        x = tuple(-v for v in x)
    return SurfacePoint(*x)


def height(p: SurfacePoint) -> int:
    """Anticanonical height: max_j |x_j| of the primitive representative."""
    return max(abs(v) for v in p.coords)


def classify(p: SurfacePoint) -> PointClass:
    """Locate p relative to the two lines and the D4 singularity."""
    x0, x1, x2, x3, x4 = p.coords
    if x0 == 0 and x1 == 0 and x2 == 0:
        if x3 == 0:
            return PointClass.SINGULAR_Q
        return PointClass.ON_E5
    if x1 == 0 and x2 == 0 and x3 == 0:
        return PointClass.ON_E6
    return PointClass.INTERIOR


def is_singular_point(p: SurfacePoint) -> bool:
    """True iff the 2x5 Jacobian of (q1, q2) drops rank at p."""
    x0, x1, x2, x3, x4 = p.coords
    r1 = (x3, -x4, 0, x0, -x1)
    r2 = (x1, x0 + x3, 2 * x2, x1, 0)
    for i in range(5):
        for j in range(i + 1, 5):
            if r1[i] * r2[j] - r1[j] * r2[i] != 0:
                return False
    return True


def psi_param(t: int, u: int, v: int) -> SurfacePoint:
    """Inverse of the projection from the line E5:

        (t:u:v) -> (t*v^2 : v^3 : v^2*u : -v*(t*v+u^2) : -t*(t*v+u^2)),

    canonicalized.  The image always satisfies both quadrics.  Inputs whose
    image is the zero vector (v = 0 with t*u = 0) are rejected.
    """
    if t == 0 and u == 0 and v == 0:
        raise ValueError("(0, 0, 0) is not a projective point")
    w = t * v + u * u
    return canonicalize((t * v * v, v**3, v * v * u, -v * w, -t * w))


def phi_project(p: SurfacePoint) -> tuple[int, int, int]:
    """Project from E5: (t:u:v) = (x0:x2:x1), reduced primitive with v >= 1.

    Only defined away from the lines; psi_param inverts it there.
    """
    if classify(p) is not PointClass.INTERIOR:
        raise ValueError(f"{p.coords} lies on a line; projection not injective there")
    t, u, v = p.x0, p.x2, p.x1
    g = math.gcd(math.gcd(abs(t), abs(u)), abs(v))
    t, u, v = t // g, u // g, v // g
    if v < 0:
        t, u, v = -t, -u, -v
    return t, u, v


def _min_square_root_multiple(x1: int) -> int:
    """Smallest s >= 1 with x1 | s^2 (product of p^ceil(e/2))."""
    s = 1
    for p, e in factorize(x1):
        s *= p ** ((e + 1) // 2)
    return s


def oracle_count(B: int, collect: bool = False):
    """Exact number of interior canonical points of height <= B, by brute force.

    Enumerates x1 in [1, B] and x2 with x1 | x2^2, solves the quadrics for
    x3 and x4, and filters on integrality, height and primitivity.  Interior
    points have x1 != 0, so fixing x1 >= 1 picks one representative per
    point.  Intended for modest B; the torsor counter owns the large range.

    Returns the count, or (count, points) when collect is set.
    """
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    if B > _ORACLE_MAX_B:
        raise ValueError(f"oracle_count supports B <= {_ORACLE_MAX_B} (got {B})")
    x0s = np.arange(-B, B + 1, dtype=np.int64)
    count = 0
    points: list[SurfacePoint] = []
    for x1 in range(1, B + 1):
        s0 = _min_square_root_multiple(x1)
        for x2 in range(-(B // s0) * s0, B + 1, s0):
            c = x2 * x2 // x1
            x3s = -x0s - c
            mask = np.abs(x3s) <= B
            prod = x0s * x3s
            mask &= prod % x1 == 0
            x4s = prod // x1
            mask &= np.abs(x4s) <= B
            g = np.gcd(np.gcd(np.gcd(x0s, x1), np.gcd(x2, x3s)), x4s)
            mask &= g == 1
            n = int(np.count_nonzero(mask))
            count += n
            if collect and n:
                for i in np.nonzero(mask)[0]:
                    points.append(
                        canonicalize((int(x0s[i]), x1, x2, int(x3s[i]), int(x4s[i])))
                    )
    if collect:
        return count, points
    return count
