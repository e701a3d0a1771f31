import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfcode.errors import DomainError
from hopfcode.foliation import (
    FROM_HALF_PI,
    FROM_ZERO,
    HALF_PI,
    QUARTER_PI,
    LeafScheme,
    ffloor,
    leaf_angles,
    leaf_count,
    leaf_distance,
    minimal_leaf_separation,
    symmetric_leaf_indices,
)

distances = st.floats(min_value=1e-3, max_value=2.0, allow_nan=False)
angles = st.floats(min_value=0.0, max_value=HALF_PI)
SCHEMES = ["symmetric", "from-zero", "from-half-pi", "centered"]


def scheme_for(kind, d):
    return LeafScheme.centered(d) if kind == "centered" else LeafScheme(kind)


def test_separation_values():
    assert minimal_leaf_separation(1.0) == pytest.approx(math.pi / 3, rel=1e-15)
    assert minimal_leaf_separation(2.0) == pytest.approx(math.pi, rel=1e-15)
    mpmath.mp.dps = 40
    oracle = float(2 * mpmath.asin(mpmath.mpf("0.25")))
    assert minimal_leaf_separation(0.5) == pytest.approx(oracle, rel=1e-15)
    assert f"{oracle:.8f}" == "0.50536051"


def test_leaf_count_values():
    assert leaf_count(1.0) == 1
    assert leaf_count(2.0) == 0
    assert leaf_count(0.5) == 3


@pytest.mark.parametrize("bad", [0.0, -0.1, 2.0000001, math.nan, math.inf])
def test_distance_domain(bad):
    with pytest.raises(DomainError):
        minimal_leaf_separation(bad)
    with pytest.raises(DomainError):
        leaf_count(bad)


def test_ffloor_snaps_only_with_tolerance():
    x = 4.0 - 1e-12
    assert ffloor(x) == 3
    assert ffloor(x, 1e-9) == 4
    assert ffloor(3.5, 1e-9) == 3


def test_leaf_distance_values():
    assert leaf_distance(0.3, 0.3) == 0.0
    assert leaf_distance(0.0, HALF_PI) == pytest.approx(math.sqrt(2), rel=1e-15)
    # separation pi/3 with both leaves inside [0, pi/2]
    assert leaf_distance(math.pi / 6, HALF_PI) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(DomainError):
        leaf_distance(-0.1, 0.2)


@given(angles, angles)
def test_leaf_distance_is_the_closest_point_pair(e1, e2):
    # sampled oracle: points (cos e x, sin e y) with x, y unit vectors; the
    # closest pair aligns the two factors, so scan a fine grid of phase offsets
    t = np.linspace(0.0, 2 * math.pi, 721)
    p = np.column_stack([math.cos(e1) * np.ones_like(t), 0 * t, math.sin(e1) * np.ones_like(t), 0 * t])
    q = np.column_stack([math.cos(e2) * np.cos(t), math.cos(e2) * np.sin(t), math.sin(e2) * np.cos(t),
                         math.sin(e2) * np.sin(t)])
    sampled = np.min(np.linalg.norm(p[:1] - q, axis=1))
    assert leaf_distance(e1, e2) == pytest.approx(sampled, abs=1e-12)


def test_example_leaf_sets():
    assert leaf_angles(1.0) == [QUARTER_PI]
    assert leaf_angles(1.0, FROM_ZERO) == pytest.approx([0.0, math.pi / 3])
    step = 2 * math.asin(0.25)
    assert leaf_angles(0.5) == pytest.approx([QUARTER_PI - step, QUARTER_PI, QUARTER_PI + step], rel=1e-15)
    np.testing.assert_allclose(leaf_angles(0.5), [0.2800, 0.7854, 1.2907], atol=1e-4)


def test_degenerate_distance_two():
    assert list(symmetric_leaf_indices(2.0)) == [0]
    assert leaf_angles(2.0) == [QUARTER_PI]


def test_from_half_pi_is_ascending_and_ends_at_half_pi():
    e = leaf_angles(0.5, FROM_HALF_PI)
    assert e == sorted(e)
    assert e[-1] == HALF_PI


def test_offset_validation():
    d = 0.5
    limit = 0.5 * (HALF_PI - leaf_count(d) * minimal_leaf_separation(d))
    assert leaf_angles(d, LeafScheme("offset", limit))[0] == limit
    with pytest.raises(DomainError):
        leaf_angles(d, LeafScheme("offset", limit + 1e-6))
    with pytest.raises(DomainError):
        LeafScheme("spiral")


@given(distances, st.sampled_from(SCHEMES))
def test_leaves_are_d_apart(d, kind):
    e = leaf_angles(d, scheme_for(kind, d))
    assert all(0.0 <= x <= HALF_PI + 1e-12 for x in e)
    for a, b in zip(e, e[1:]):
        assert leaf_distance(a, min(b, HALF_PI)) >= d - 1e-12


@given(distances, distances)
def test_monotone_in_distance(d1, d2):
    lo, hi = sorted((d1, d2))
    assert leaf_count(lo) >= leaf_count(hi)
    if lo < hi:
        assert minimal_leaf_separation(lo) < minimal_leaf_separation(hi)


@given(distances)
def test_symmetric_scheme_is_mirror_invariant(d):
    e = np.array(leaf_angles(d))
    np.testing.assert_allclose(np.sort(HALF_PI - e), e, atol=1e-12)
