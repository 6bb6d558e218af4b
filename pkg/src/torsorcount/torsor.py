"""Universal torsor of the surface: equation, projection, coprimality, lift.

The torsor is the hypersurface

    T(eta, alpha) = eta2*a1^2 + eta3*eta5^2*a2 + eta4*eta6^2*a3 = 0

in variables (eta1..eta6, a1, a2, a3).  The projection Psi down to the
surface sends a torsor point to

    x0 = eta1^2 eta2 eta3^2 eta4 eta5^2 * a2
    x1 = eta1^4 eta2^2 eta3^3 eta4^3 eta5^2 eta6^2
    x2 = eta1^3 eta2^2 eta3^2 eta4^2 eta5 eta6 * a1
    x3 = eta1^2 eta2 eta3 eta4^2 eta6^2 * a3
    x4 = a2 * a3

and one checks directly that q1(x) = 0 identically while q2(x) equals
T(eta, alpha) times a monomial in the eta's, so every torsor solution maps
onto the surface.

Which variables may share a prime factor is governed by the intersection
graph of the curves E1..E6 (eta's) and A1..A3 (alpha's) on the minimal
desingularization: two variables may have a common factor iff their
curves meet.  A1, A2, A3 additionally meet in a single point, so a common
factor of all three alphas is allowed.

Integer points of the torsor satisfying the coprimality conditions and
the five height inequalities |x_i| <= B biject with the interior rational
points of height <= B; ``lift`` realizes the inverse by splitting off
gcd's in the same order in which the five blow-ups create E2, E1, E4,
E6, E5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .surface import SurfacePoint, canonicalize, phi_project

# Exponents of (eta1..eta6) in each coordinate monomial of the projection.
MON_X0 = (2, 1, 2, 1, 2, 0)
MON_X1 = (4, 2, 3, 3, 2, 2)
MON_X2 = (3, 2, 2, 2, 1, 1)
MON_X3 = (2, 1, 1, 2, 0, 2)

ETA_VERTICES = ("E1", "E2", "E3", "E4", "E5", "E6")
ALPHA_VERTICES = ("A1", "A2", "A3")


@dataclass(frozen=True)
class DynkinAdjacency:
    """Intersection graph of E1..E6, A1..A3, plus the A1-A2-A3 triple point."""

    edges: frozenset[frozenset[str]]
    triple_point: bool = True

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def eta_adjacent_pairs(self) -> set[tuple[int, int]]:
        """1-based index pairs (i, j), i < j, of eta's allowed to share a factor."""
        out = set()
        for i in range(1, 7):
            for j in range(i + 1, 7):
                if self.adjacent(f"E{i}", f"E{j}"):
                    out.add((i, j))
        return out

    def alpha_coprime_eta_indices(self, k: int) -> tuple[int, ...]:
        """Eta indices that alpha_k must be coprime to (the non-neighbours of A_k)."""
        return tuple(
            i for i in range(1, 7) if not self.adjacent(f"A{k}", f"E{i}")
        )


DYNKIN = DynkinAdjacency(
    edges=frozenset(
        frozenset(e)
        for e in [
            ("A2", "E5"),
            ("A2", "A1"),
            ("A2", "A3"),
            ("E5", "E3"),
            ("E3", "E1"),
            ("A1", "E2"),
            ("E2", "E1"),
            ("A3", "E6"),
            ("E6", "E4"),
            ("E4", "E1"),
            ("A3", "A1"),
        ]
    )
)

# eta pairs that may share a prime: (1,2), (1,3), (1,4), (3,5), (4,6)
ETA_ADJACENT = DYNKIN.eta_adjacent_pairs()
ETA_COPRIME_PAIRS = [
    (i, j) for i in range(1, 7) for j in range(i + 1, 7) if (i, j) not in ETA_ADJACENT
]


@dataclass(frozen=True)
class TorsorPoint:
    eta: tuple[int, int, int, int, int, int]
    alpha: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.eta))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if len(self.eta) != 6 or len(self.alpha) != 3:
            raise ValueError("TorsorPoint needs 6 eta's and 3 alpha's")
        if any(e < 1 for e in self.eta):
            raise ValueError(f"eta must be positive, got {self.eta}")

    @property
    def nine(self) -> tuple[int, ...]:
        return self.eta + self.alpha


def torsor_form(nine: Sequence[int]) -> int:
    """T(eta, alpha) for a raw 9-tuple (eta1..eta6, a1, a2, a3)."""
    e1, e2, e3, e4, e5, e6, a1, a2, a3 = nine
    return e2 * a1 * a1 + e3 * e5 * e5 * a2 + e4 * e6 * e6 * a3


def _mon(eta: Sequence[int], exps: Sequence[int]) -> int:
    m = 1
    for e, n in zip(eta, exps):
        m *= e**n
    return m


def psi_map_raw(T: TorsorPoint) -> tuple[int, int, int, int, int]:
    """The five coordinates of the projection, before canonicalization."""
    a1, a2, a3 = T.alpha
    return (
        _mon(T.eta, MON_X0) * a2,
        _mon(T.eta, MON_X1),
        _mon(T.eta, MON_X2) * a1,
        _mon(T.eta, MON_X3) * a3,
        a2 * a3,
    )


def psi_map(T: TorsorPoint) -> SurfacePoint:
    """Project a torsor solution to the surface (canonicalized).

    Requires torsor_form = 0; the image is then automatically on S, and
    interior (its x1 coordinate is a product of positive eta's).
    """
    t = torsor_form(T.nine)
    if t != 0:
        raise ValueError(f"not on the torsor hypersurface: T = {t}")
    return canonicalize(psi_map_raw(T))


def check_coprimality(T: TorsorPoint) -> tuple[bool, list[str]]:
    """Dynkin coprimality: non-adjacent variables must be coprime.

    Concretely: (a) eta_i coprime to eta_j for every non-adjacent pair,
    (b) gcd(a1, eta1*eta3*eta4*eta5*eta6) = 1,
    (c) gcd(a2, eta1*eta2*eta3*eta4*eta6) = 1,
    (d) gcd(a3, eta1*eta2*eta3*eta4*eta5) = 1.
    A common factor of all three alphas is allowed.  Returns (ok, violations).
    """
    eta, alpha = T.eta, T.alpha
    violations = []
    for i, j in ETA_COPRIME_PAIRS:
        g = math.gcd(eta[i - 1], eta[j - 1])
        if g > 1:
            violations.append(f"gcd(eta{i}, eta{j}) = {g}")
    for k in (1, 2, 3):
        prod = 1
        for i in DYNKIN.alpha_coprime_eta_indices(k):
            prod *= eta[i - 1]
        g = math.gcd(alpha[k - 1], prod)
        if g > 1:
            violations.append(f"gcd(alpha{k}, eta-product {prod}) = {g}")
    return not violations, violations


def height_monomials(T: TorsorPoint) -> tuple[int, int, int, int, int]:
    """Absolute values of the five raw projection coordinates.

    Their maximum is the height of the image point whenever the
    coprimality conditions hold (the raw tuple is then primitive).
    """
    x = psi_map_raw(T)
    return tuple(abs(v) for v in x)


def is_valid(T: TorsorPoint, B: int) -> bool:
    """Torsor equation + coprimality + all five height monomials <= B."""
    if torsor_form(T.nine) != 0:
        return False
    ok, _ = check_coprimality(T)
    if not ok:
        return False
    return max(height_monomials(T)) <= B


def _divide_exact(value: int, d: int) -> int:
    assert value % d == 0
    return value // d


def lift(p: SurfacePoint) -> TorsorPoint:
    """Lift an interior point to its unique admissible torsor preimage.

    Starting from the primitive projection triple (t, u, v), v >= 1, set
    eta3 = v, a1 = u, a2 = t, a3 = -(eta3*a2 + a1^2), then split off five
    gcd's, one per blow-up:

        1. eta2 = gcd(eta3, a1), dividing eta3, a1, a3;
        2. eta1 = gcd(eta2, eta3), dividing eta2, eta3, a3;
        3. eta4 = gcd(eta1, a3), dividing eta1, a3;
        4. eta6 = gcd(eta4, a3), dividing eta4, a3;
        5. eta5 = gcd(eta3, a2), dividing eta3, a2.

    gcd(0, n) = |n| throughout, so the alpha = (0, 0, 0) fibre (the point
    (0:1:0:0:0)) extracts nothing.  The result satisfies the torsor
    equation and the full coprimality system, and psi_map inverts it.
    """
    t, u, v = phi_project(p)

    eta3, a1, a2 = v, u, t
    a3 = -(eta3 * a2 + a1 * a1)

    eta2 = math.gcd(eta3, a1)
    eta3, a1, a3 = eta3 // eta2, a1 // eta2, _divide_exact(a3, eta2)

    eta1 = math.gcd(eta2, eta3)
    eta2, eta3, a3 = eta2 // eta1, eta3 // eta1, _divide_exact(a3, eta1)

    eta4 = math.gcd(eta1, a3)
    eta1, a3 = eta1 // eta4, _divide_exact(a3, eta4)

    eta6 = math.gcd(eta4, a3)
    eta4, a3 = eta4 // eta6, _divide_exact(a3, eta6)

    eta5 = math.gcd(eta3, a2)
    eta3, a2 = eta3 // eta5, _divide_exact(a2, eta5)

    return TorsorPoint((eta1, eta2, eta3, eta4, eta5, eta6), (a1, a2, a3))


def height_x_form(T: TorsorPoint, B: int | float) -> tuple[float, float, float, float, float]:
    """The five height conditions in scaled coordinates.

    With X0 = (x1-monomial / B)^(1/3), X1 = (B * eta5*eta6 / (eta1*eta2^2))^(1/3)
    and X2 = (B * eta1^2*eta2*eta4^3*eta6^4 / eta5^2)^(1/3), the quantities

        |X0^3|, |X0^2 (a1/X1)|, |X0^2 (a2/X2)|,
        |X0 (X0 (a2/X2) + (a1/X1)^2)|, |(a2/X2) (X0 (a2/X2) + (a1/X1)^2)|

    equal the five height monomials divided by B (in the coordinate order
    x1, x2, x0, x3, x4); the last two use the torsor equation to
    eliminate a3.
    """
    e1, e2, e3, e4, e5, e6 = T.eta
    a1, a2, _ = T.alpha
    x0_ = (_mon(T.eta, MON_X1) / B) ** (1.0 / 3.0)
    x1_ = (B * e5 * e6 / (e1 * e2 * e2)) ** (1.0 / 3.0)
    x2_ = (B * e1 * e1 * e2 * e4**3 * e6**4 / (e5 * e5)) ** (1.0 / 3.0)
    s = x0_ * (a2 / x2_) + (a1 / x1_) ** 2
    return (
        abs(x0_**3),
        abs(x0_ * x0_ * (a1 / x1_)),
        abs(x0_ * x0_ * (a2 / x2_)),
        abs(x0_ * s),
        abs((a2 / x2_) * s),
    )
