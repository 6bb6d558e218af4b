import math
import random

import pytest

from torsorcount.counter import torsor_points
from torsorcount.surface import canonicalize, evaluate_forms, height, oracle_count
from torsorcount.torsor import (
    DYNKIN,
    ETA_ADJACENT,
    TorsorPoint,
    check_coprimality,
    height_monomials,
    height_x_form,
    is_valid,
    lift,
    psi_map,
    psi_map_raw,
    torsor_form,
)


def random_solutions(n, seed, eta_max=6, alpha_max=60):
    """Random torsor-equation solutions: pick eta, a1, a2 and keep the
    sample when a3 comes out integral.  No coprimality imposed."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        eta = tuple(rng.randint(1, eta_max) for _ in range(6))
        a1 = rng.randint(-alpha_max, alpha_max)
        a2 = rng.randint(-alpha_max, alpha_max)
        num = eta[1] * a1 * a1 + eta[2] * eta[4] ** 2 * a2
        den = eta[3] * eta[5] ** 2
        if num % den:
            continue
        out.append(TorsorPoint(eta, (a1, a2, -(num // den))))
    return out


def test_dynkin_adjacency_data():
    assert len(DYNKIN.edges) == 11
    assert DYNKIN.triple_point
    assert DYNKIN.adjacent("A2", "E5") and DYNKIN.adjacent("E5", "A2")
    assert not DYNKIN.adjacent("E2", "E3")
    assert ETA_ADJACENT == {(1, 2), (1, 3), (1, 4), (3, 5), (4, 6)}
    # alpha coprimality products read off the graph match the explicit ones
    assert DYNKIN.alpha_coprime_eta_indices(1) == (1, 3, 4, 5, 6)
    assert DYNKIN.alpha_coprime_eta_indices(2) == (1, 2, 3, 4, 6)
    assert DYNKIN.alpha_coprime_eta_indices(3) == (1, 2, 3, 4, 5)


@pytest.mark.parametrize(
    "nine, value",
    [
        ((1, 1, 1, 1, 1, 1, 1, 1, -2), 0),
        ((1, 1, 1, 1, 2, 1, 1, 1, -5), 0),
        ((1, 1, 1, 1, 1, 1, 1, 1, 1), 3),
    ],
)
def test_torsor_form_examples(nine, value):
    assert torsor_form(nine) == value


@pytest.mark.parametrize(
    "eta, alpha, image",
    [
        ((1, 1, 1, 1, 1, 1), (1, 1, -2), (1, 1, 1, -2, -2)),
        ((1, 1, 1, 1, 1, 1), (0, 0, 0), (0, 1, 0, 0, 0)),
        ((1, 1, 1, 1, 2, 1), (1, 1, -5), (4, 4, 2, -5, -5)),
    ],
)
def test_psi_map_examples(eta, alpha, image):
    assert psi_map(TorsorPoint(eta, alpha)).coords == image


def test_psi_map_rejects_off_torsor():
    with pytest.raises(ValueError):
        psi_map(TorsorPoint((1,) * 6, (1, 1, 1)))


def test_check_coprimality_examples():
    ok, viol = check_coprimality(TorsorPoint((1,) * 6, (0, 0, 0)))
    assert ok and not viol
    ok, viol = check_coprimality(TorsorPoint((1, 1, 2, 1, 2, 1), (1, 1, -9)))
    assert ok  # eta3, eta5 may share 2: E3 and E5 are adjacent
    ok, viol = check_coprimality(TorsorPoint((1, 1, 2, 1, 1, 1), (2, 1, -3)))
    assert not ok and len(viol) == 1 and "alpha1" in viol[0]
    ok, viol = check_coprimality(TorsorPoint((1, 2, 1, 1, 2, 1), (1, 1, -9)))
    assert not ok and "eta2" in viol[0]  # eta2, eta5 are not adjacent


@pytest.mark.parametrize(
    "eta, alpha, monomials",
    [
        ((1, 1, 1, 1, 1, 1), (1, 1, -2), (1, 1, 1, 2, 2)),
        ((1, 1, 1, 1, 2, 1), (1, 1, -5), (4, 4, 2, 5, 5)),
        ((1, 1, 1, 1, 1, 1), (0, 0, 0), (0, 1, 0, 0, 0)),
    ],
)
def test_height_monomials_examples(eta, alpha, monomials):
    assert height_monomials(TorsorPoint(eta, alpha)) == monomials


@pytest.mark.parametrize(
    "coords, eta, alpha",
    [
        ((1, 1, 1, -2, -2), (1, 1, 1, 1, 1, 1), (1, 1, -2)),
        ((4, 4, 2, -5, -5), (1, 1, 1, 1, 2, 1), (1, 1, -5)),
        ((0, 1, 0, 0, 0), (1, 1, 1, 1, 1, 1), (0, 0, 0)),
    ],
)
def test_lift_examples(coords, eta, alpha):
    T = lift(canonicalize(coords))
    assert T.eta == eta and T.alpha == alpha


def test_lift_rejects_line_points():
    with pytest.raises(ValueError):
        lift(canonicalize((0, 0, 0, 1, 0)))


@pytest.mark.parametrize(
    "eta, alpha, B, valid",
    [
        ((1, 1, 1, 1, 1, 1), (1, 1, -2), 2, True),
        ((1, 1, 1, 1, 1, 1), (1, 1, -2), 1, False),
        ((1, 1, 1, 1, 2, 1), (1, 1, -5), 5, True),
    ],
)
def test_is_valid_examples(eta, alpha, B, valid):
    assert is_valid(TorsorPoint(eta, alpha), B) is valid


def test_pullback_identity_bulk():
    # every torsor-equation solution maps onto the surface, coprime or not
    for T in random_solutions(10_000, seed=17):
        raw = psi_map_raw(T)
        assert evaluate_forms(raw) == (0, 0)


def test_primitivity_under_coprimality():
    checked = 0
    for T in torsor_points(60):
        ok, _ = check_coprimality(T)
        assert ok
        raw = psi_map_raw(T)
        g = 0
        for c in raw:
            g = math.gcd(g, c)
        assert g == 1
        checked += 1
    assert checked == oracle_count(60)


def test_height_equivalence():
    for T in torsor_points(40):
        assert max(height_monomials(T)) == height(psi_map(T))


def test_alpha1_sign_symmetry():
    for T in torsor_points(30):
        a1, a2, a3 = T.alpha
        flipped = TorsorPoint(T.eta, (-a1, a2, a3))
        assert is_valid(flipped, 30) == is_valid(T, 30)
        x = psi_map_raw(T)
        y = psi_map_raw(flipped)
        assert y == (x[0], x[1], -x[2], x[3], x[4])


def test_height_x_form_matches_monomials():
    # scaled coordinates reproduce monomial/B in the order (x1, x2, x0, x3, x4)
    for T in torsor_points(50):
        B = 50
        m = height_monomials(T)
        expected = (m[1] / B, m[2] / B, m[0] / B, m[3] / B, m[4] / B)
        got = height_x_form(T, B)
        for a, b in zip(got, expected):
            assert abs(a - b) <= 1e-9 * max(1.0, abs(b))


def test_bijection_round_trip_small():
    _, points = oracle_count(60, collect=True)
    for p in points:
        assert psi_map(lift(p)) == p
    for T in torsor_points(60):
        assert lift(psi_map(T)) == T
