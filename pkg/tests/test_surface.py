import math
import random

import pytest

from torsorcount.surface import (
    PointClass,
    SurfacePoint,
    canonicalize,
    classify,
    evaluate_forms,
    height,
    is_singular_point,
    oracle_count,
    phi_project,
    psi_param,
)

# exhaustive search at height 1 finds exactly these seven interior points
# (written here with the x1 > 0 sign; canonicalize flips three of them)
HEIGHT_ONE_POINTS = [
    (0, 1, 0, 0, 0),
    (1, 1, 0, -1, -1),
    (-1, 1, 0, 1, -1),
    (0, 1, 1, -1, 0),
    (0, 1, -1, -1, 0),
    (-1, 1, 1, 0, 0),
    (-1, 1, -1, 0, 0),
]

ORACLE_COUNT_AT_2 = 11  # frozen from exhaustive search over |x_j| <= 2


@pytest.mark.parametrize(
    "x, forms",
    [
        ((0, 1, 0, 0, 0), (0, 0)),
        ((1, 1, 1, -2, -2), (0, 0)),
        ((1, 1, 1, 1, 1), (0, 3)),
    ],
)
def test_evaluate_forms_examples(x, forms):
    assert evaluate_forms(x) == forms


@pytest.mark.parametrize(
    "x, expected",
    [
        ((2, 2, 2, -4, -4), (1, 1, 1, -2, -2)),
        ((-1, 1, 0, 1, -1), (1, -1, 0, -1, 1)),
        ((0, 3, 0, 0, 0), (0, 1, 0, 0, 0)),
    ],
)
def test_canonicalize_examples(x, expected):
    assert canonicalize(x).coords == expected


def test_canonicalize_idempotent_and_sign_canonical():
    rng = random.Random(11)
    for _ in range(500):
        t, u, v = rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(1, 20)
        p = psi_param(t, u, v)
        k = rng.choice([1, 2, 3, -1, -2])
        scaled = tuple(k * c for c in p.coords)
        assert canonicalize(scaled) == p
        assert canonicalize(tuple(-c for c in p.coords)) == p


def test_canonicalize_rejections():
    with pytest.raises(ValueError):
        canonicalize((0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        canonicalize((1, 1, 1, 1, 1))  # not on the surface


@pytest.mark.parametrize(
    "coords, h",
    [
        ((0, 1, 0, 0, 0), 1),
        ((1, 1, 1, -2, -2), 2),
        ((4, 4, 2, -5, -5), 5),
    ],
)
def test_height_examples(coords, h):
    assert height(canonicalize(coords)) == h


@pytest.mark.parametrize(
    "coords, cls",
    [
        ((0, 0, 0, 1, 0), PointClass.ON_E5),
        ((0, 0, 0, 0, 1), PointClass.SINGULAR_Q),
        ((1, 1, 1, -2, -2), PointClass.INTERIOR),
        ((1, 0, 0, 0, 1), PointClass.ON_E6),
    ],
)
def test_classify_examples(coords, cls):
    assert classify(canonicalize(coords)) is cls


def test_interior_iff_x1_nonzero():
    rng = random.Random(5)
    for _ in range(300):
        p = psi_param(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 9))
        assert (classify(p) is PointClass.INTERIOR) == (p.x1 != 0)


@pytest.mark.parametrize(
    "coords, singular",
    [
        ((0, 0, 0, 0, 1), True),
        ((0, 1, 0, 0, 0), False),
        ((1, 1, 1, -2, -2), False),
        ((0, 0, 0, 1, 0), False),
    ],
)
def test_is_singular_point(coords, singular):
    assert is_singular_point(canonicalize(coords)) is singular


@pytest.mark.parametrize(
    "tuv, coords",
    [
        ((1, 1, 1), (1, 1, 1, -2, -2)),
        ((0, 0, 1), (0, 1, 0, 0, 0)),
        ((2, 1, 2), (4, 4, 2, -5, -5)),
    ],
)
def test_psi_param_examples(tuv, coords):
    assert psi_param(*tuv).coords == coords


def test_psi_param_rejects_zero_image():
    with pytest.raises(ValueError):
        psi_param(0, 0, 0)
    with pytest.raises(ValueError):
        psi_param(1, 0, 0)  # image is the zero vector


def test_psi_images_on_surface_bulk():
    rng = random.Random(2)
    for _ in range(10_000):
        t, u = rng.randint(-200, 200), rng.randint(-200, 200)
        v = rng.randint(1, 200)
        p = psi_param(t, u, v)
        assert evaluate_forms(p.coords) == (0, 0)


@pytest.mark.parametrize(
    "coords, tuv",
    [
        ((1, 1, 1, -2, -2), (1, 1, 1)),
        ((4, 4, 2, -5, -5), (2, 1, 2)),
        ((0, 1, 0, 0, 0), (0, 0, 1)),
    ],
)
def test_phi_project_examples(coords, tuv):
    assert phi_project(canonicalize(coords)) == tuv


def test_phi_project_rejects_line_points():
    with pytest.raises(ValueError):
        phi_project(canonicalize((0, 0, 0, 1, 0)))


def test_phi_psi_round_trip():
    rng = random.Random(3)
    for _ in range(2000):
        t, u, v = rng.randint(-60, 60), rng.randint(-60, 60), rng.randint(1, 60)
        g = math.gcd(math.gcd(t, u), v)
        t, u, v = t // g, u // g, v // g
        assert phi_project(psi_param(t, u, v)) == (t, u, v)


def test_oracle_count_base_cases():
    count, points = oracle_count(1, collect=True)
    assert count == 7
    assert set(points) == {canonicalize(c) for c in HEIGHT_ONE_POINTS}
    # line points exist at height 1 but are not interior, hence not counted
    line_point = canonicalize((0, 0, 0, 1, 0))
    assert line_point not in points
    assert oracle_count(2) == ORACLE_COUNT_AT_2


def test_oracle_points_are_valid_and_distinct():
    count, points = oracle_count(12, collect=True)
    assert len(points) == count == len(set(points))
    for p in points:
        assert evaluate_forms(p.coords) == (0, 0)
        assert classify(p) is PointClass.INTERIOR
        assert height(p) <= 12
        assert isinstance(p, SurfacePoint)


def test_oracle_monotone():
    counts = [oracle_count(b) for b in range(1, 31)]
    assert counts == sorted(counts)


def test_oracle_rejects_bad_bounds():
    with pytest.raises(ValueError):
        oracle_count(0)
