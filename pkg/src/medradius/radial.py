"""Univariate median-radius functional and its one-sided slope statistics.

For a sample x_1..x_n the median radius at v is the k-th smallest of
|x_i - v| with k = ceil(n/2): the smallest r for which the closed interval
[v - r, v + r] holds at least half of the sample.

The slope statistics (``subgradient``, ``curvature``) are proportions of the
sample and are returned as exact ``fractions.Fraction`` values so that the
identity  d_plus - d_minus == P(X = v - g) + P(X = v + g)  holds without
rounding.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DegenerateScaleError, EmptySampleError, MedRadiusError


def as_sample(values) -> np.ndarray:
    """Return a sorted, read-only float64 copy of a 1D sample."""
    x = np.sort(np.asarray(values, dtype=float).ravel())
    if x.size == 0:
        raise EmptySampleError()
    if not np.all(np.isfinite(x)):
        raise MedRadiusError("sample contains non-finite values")
    x.flags.writeable = False
    return x


def _half(n):
    return (n + 1) // 2


def median_univariate(sample) -> float:
    x = as_sample(sample)
    return float(np.median(x))


def g_univariate(sample, v) -> float:
    """Median radius of ``sample`` seen from ``v`` (lower-median convention)."""
    x = as_sample(sample)
    k = _half(x.size)
    return float(np.partition(np.abs(x - v), k - 1)[k - 1])


def h_univariate(sample, v, center) -> float:
    scale = g_univariate(sample, center)
    if scale == 0:
        raise DegenerateScaleError(
            f"median radius at center {center!r} is zero")
    return g_univariate(sample, v) / scale


class BoundaryCounts(NamedTuple):
    """Counts of sample points relative to the interval [v - g, v + g].

    ``lower`` and ``upper`` count points sitting exactly on the left and right
    ends; when g == 0 a point equal to v is on both ends.
    """
    below: int
    lower: int
    upper: int
    above: int
    n: int
    g: float


def boundary_counts(sample, v) -> BoundaryCounts:
    x = as_sample(sample)
    dist = np.abs(x - v)
    k = _half(x.size)
    g = np.partition(dist, k - 1)[k - 1]
    # Ends are detected on the distances themselves (never on v +- g), so a
    # point defining g always lands on the boundary.
    on_edge = dist == g
    outside = dist > g
    return BoundaryCounts(
        below=int(np.count_nonzero(outside & (x < v))),
        lower=int(np.count_nonzero(on_edge & (x <= v))),
        upper=int(np.count_nonzero(on_edge & (x >= v))),
        above=int(np.count_nonzero(outside & (x > v))),
        n=int(x.size),
        g=float(g),
    )


def _slopes(c: BoundaryCounts):
    # d_minus = P(X > v+g) - P(X <= v-g);  d_plus = P(X >= v-g) - P(X < v+g)
    d_minus = Fraction(c.above - c.below - c.lower, c.n)
    d_plus = Fraction(c.above + c.upper - c.below, c.n)
    return d_minus, d_plus


def subgradient(sample, v) -> tuple:
    """Left and right tail-imbalance statistics at ``v`` as exact fractions."""
    return _slopes(boundary_counts(sample, v))


def curvature(sample, v) -> Fraction:
    d_minus, d_plus = subgradient(sample, v)
    return d_plus - d_minus


def boundary_mass(sample, v) -> Fraction:
    """P(X = v - g) + P(X = v + g) with g the median radius at ``v``."""
    c = boundary_counts(sample, v)
    return Fraction(c.lower, c.n) + Fraction(c.upper, c.n)


@dataclass(frozen=True)
class RadialProfile:
    v: np.ndarray
    g: np.ndarray
    h: np.ndarray
    d_minus: np.ndarray
    d_plus: np.ndarray
    a: np.ndarray
    slope: np.ndarray
    center: float
    degenerate: bool = False

    columns = ("v", "g", "h", "d_minus", "d_plus", "a", "slope")

    def __len__(self):
        return self.v.size

    def rows(self):
        cols = [getattr(self, c) for c in self.columns]
        return [tuple(float(col[i]) for col in cols) for i in range(len(self))]


def profile(sample, grid, center) -> RadialProfile:
    """Evaluate g, h, the slope statistics and curvature along ``grid``.

    ``slope`` is the finite-difference derivative of g along the grid, kept
    next to the tail-imbalance statistics for comparison.  If the median
    radius at ``center`` is zero, h is +inf off-center and 1 where g == 0,
    and ``degenerate`` is set.
    """
    x = as_sample(sample)
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0:
        raise MedRadiusError("empty grid")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise MedRadiusError("grid must be strictly increasing")

    m = grid.size
    g = np.empty(m)
    d_minus = np.empty(m)
    d_plus = np.empty(m)
    a = np.empty(m)
    for i, v in enumerate(grid):
        c = boundary_counts(x, v)
        lo, hi = _slopes(c)
        g[i] = c.g
        d_minus[i] = float(lo)
        d_plus[i] = float(hi)
        a[i] = float(hi - lo)

    scale = g_univariate(x, center)
    degenerate = scale == 0
    if degenerate:
        h = np.where(g == 0, 1.0, np.inf)
    else:
        h = g / scale
    slope = np.gradient(g, grid) if m > 1 else np.zeros(1)
    return RadialProfile(v=grid, g=g, h=h, d_minus=d_minus, d_plus=d_plus,
                         a=a, slope=slope, center=float(center),
                         degenerate=bool(degenerate))
