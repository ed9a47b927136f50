from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from medradius.errors import DegenerateScaleError, EmptySampleError, MedRadiusError
from medradius.radial import (RadialProfile, boundary_mass, curvature, g_univariate,
                              h_univariate, median_univariate, profile, subgradient)
from medradius.sampling import Scenario, generate_scenario

FIVE = [0, 1, 2, 3, 4]

# dyadic values: subtraction and scaling by powers of two are exact
dyadic = st.integers(-64, 64).map(lambda i: i / 8)
tie_heavy = st.integers(-3, 3).map(float)
samples = st.lists(dyadic, min_size=1, max_size=40) | st.lists(tie_heavy, min_size=1, max_size=25)


def test_g_examples():
    assert g_univariate(FIVE, 2) == 1
    assert g_univariate(FIVE, 0) == 2
    assert g_univariate([3.5], 3.5) == 0


def test_g_empty():
    with pytest.raises(EmptySampleError) as exc:
        g_univariate([], 0.0)
    assert exc.value.code == "empty-sample"


def test_g_rejects_nonfinite():
    with pytest.raises(MedRadiusError):
        g_univariate([0.0, np.nan], 0.0)


def test_median_examples():
    assert median_univariate(FIVE) == 2
    assert median_univariate([0, 1, 2, 3]) == 1.5
    assert median_univariate([7]) == 7


def test_h_examples():
    assert h_univariate(FIVE, 0, 2) == 2.0
    assert h_univariate(FIVE, 1.3, 1.3) == 1.0
    with pytest.raises(DegenerateScaleError) as exc:
        h_univariate([0, 0, 0, 2], 1.0, 0)
    assert exc.value.code == "degenerate-scale"


def test_subgradient_examples():
    assert subgradient(FIVE, 2) == (Fraction(-1, 5), Fraction(1, 5))
    assert subgradient([0, 0, 0, 2], 0) == (Fraction(-1, 2), Fraction(1))
    lo, hi = subgradient([-1, 0, 1], 0)
    assert lo <= 0 <= hi


def test_curvature_examples():
    assert curvature([0, 0, 0, 2], 0) == Fraction(3, 2)
    assert curvature(FIVE, 2) == Fraction(2, 5)
    # only the left boundary 1.0 hits a data point
    assert curvature(FIVE, 2.2) == Fraction(1, 5)


def test_profile_single_entry():
    p = profile(FIVE, [2.0], 2.0)
    assert isinstance(p, RadialProfile)
    assert len(p) == 1
    assert p.rows()[0][:6] == (2.0, 1.0, 1.0, -0.2, 0.2, 0.4)


def test_profile_normal_design_minimum_in_middle():
    x = generate_scenario(Scenario("normal1d", 200))[:, 0]
    p = profile(x, np.linspace(-3, 3, 201), 0.0)
    assert np.flatnonzero(p.g == p.g.min()).tolist() == [100]


def test_profile_grid_checks():
    with pytest.raises(MedRadiusError):
        profile(FIVE, [], 2.0)
    with pytest.raises(MedRadiusError):
        profile(FIVE, [1.0, 1.0], 2.0)


def test_profile_degenerate_scale_sentinel():
    p = profile([0, 0, 0, 2], [-1.0, 0.0, 1.0], 0.0)
    assert p.degenerate
    assert list(p.h) == [np.inf, 1.0, np.inf]


@given(samples, dyadic)
def test_quantile_representation_matches_radius_scan(xs, v):
    g = g_univariate(xs, v)
    assert Fraction(g) == oracles.g_radius_scan(xs, v)
    k = oracles.half(len(xs))
    d = np.abs(np.asarray(xs) - v)
    assert np.count_nonzero(d <= g) >= k
    assert np.count_nonzero(d < g) < k


@given(samples, dyadic, dyadic)
def test_lipschitz(xs, v, w):
    assert abs(g_univariate(xs, v) - g_univariate(xs, w)) <= abs(v - w)


@given(samples, dyadic)
def test_slopes_match_counting_oracle(xs, v):
    d_minus, d_plus = subgradient(xs, v)
    o_minus, o_plus, mass = oracles.slope_counts(xs, v)
    assert (d_minus, d_plus) == (o_minus, o_plus)
    assert -1 <= d_minus <= d_plus <= 1
    assert curvature(xs, v) == d_plus - d_minus == boundary_mass(xs, v) == mass


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=30),
       st.floats(-1e6, 1e6))
def test_curvature_identity_on_arbitrary_floats(xs, v):
    d_minus, d_plus = subgradient(xs, v)
    assert curvature(xs, v) == d_plus - d_minus == boundary_mass(xs, v)


@given(st.lists(dyadic, min_size=1, max_size=15), dyadic, dyadic)
def test_symmetric_sample(half_sample, m, t):
    xs = half_sample + [2 * m - x for x in half_sample]
    assert g_univariate(xs, m + t) == g_univariate(xs, m - t)
    lo, hi = subgradient(xs, m)
    assert lo <= 0 <= hi


@given(samples, dyadic, st.sampled_from([-4.0, -0.5, 0.25, 2.0]), dyadic)
def test_translation_scale_equivariance(xs, v, a, b):
    ys = [a * x + b for x in xs]
    assert g_univariate(ys, a * v + b) == abs(a) * g_univariate(xs, v)


@given(samples, st.lists(dyadic, min_size=2, max_size=30, unique=True))
def test_profile_invariants(xs, grid):
    grid = sorted(grid)
    p = profile(xs, grid, median_univariate(xs))
    assert np.all(np.abs(np.diff(p.g)) <= np.abs(np.diff(p.v)))
    for v, a in zip(grid, p.a):
        assert a == float(curvature(xs, v))
    assert np.all(p.a >= 0)
