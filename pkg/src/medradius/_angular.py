"""Angular ordering of planar directions with exact half-turns.

Directions are mapped to unsigned 64-bit keys that increase with the polar
angle.  The top two bits hold the quadrant and the low bits hold the IEEE bit
pattern of a monotone in-quadrant ratio in [0, 1].  The ratio is computed so
that a vector and its negation produce the same float, hence their keys differ
by exactly 2**63 and a half-turn is a wrapping add on uint64.
"""

import numpy as np

HALF_TURN = np.uint64(1 << 63)


def direction_keys(vectors) -> np.ndarray:
    """Keys for nonzero 2D vectors, monotone in angle measured from +x."""
    x = np.asarray(vectors[:, 0], dtype=float)
    y = np.asarray(vectors[:, 1], dtype=float)
    q = np.empty(x.shape, dtype=np.uint64)
    f = np.empty(x.shape, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        m0 = (x > 0) & (y >= 0)
        m1 = (x <= 0) & (y > 0)
        m2 = (x < 0) & (y <= 0)
        m3 = (x >= 0) & (y < 0)
        q[m0], f[m0] = 0, y[m0] / (x[m0] + y[m0])
        q[m1], f[m1] = 1, (-x[m1]) / ((-x[m1]) + y[m1])
        q[m2], f[m2] = 2, (-y[m2]) / ((-x[m2]) + (-y[m2]))
        q[m3], f[m3] = 3, x[m3] / (x[m3] + (-y[m3]))
    f = f + 0.0  # -0.0 -> 0.0
    return (q << np.uint64(62)) | f.view(np.uint64)


def split_coincident(points, v):
    """Return (offsets of points different from v, number equal to v)."""
    diff = np.asarray(points, dtype=float) - np.asarray(v, dtype=float)
    same = (diff[:, 0] == 0) & (diff[:, 1] == 0)
    return diff[~same], int(np.count_nonzero(same))


def min_closed_halfplane(keys) -> int:
    """Fewest keyed directions in a closed half-plane through the origin.

    For each direction i, counts directions in the half-open arc
    (angle_i, angle_i + pi]; the minimum over i is the minimum over generic
    open half-planes, which equals the closed-half-plane minimum.
    """
    m = keys.size
    if m == 0:
        return 0
    k = np.sort(keys)
    end = k + HALF_TURN
    start_rank = np.searchsorted(k, k, side="right")
    end_rank = np.searchsorted(k, end, side="right")
    wrap = end < k
    counts = np.where(wrap, (m - start_rank) + end_rank, end_rank - start_rank)
    return int(counts.min())


def open_halfplane_pairs(keys) -> int:
    """Sum over directions of C(c_i, 2), c_i = later directions within < pi.

    "Later" follows the sorted order, so directions sharing a ray are counted
    once.  Each triple lying in an open half-plane through the origin is
    counted exactly once, from its first direction in counterclockwise order.
    """
    m = keys.size
    if m < 3:
        return 0
    k = np.sort(keys)
    pos = np.arange(m)
    end = k + HALF_TURN
    wrap = end < k
    rank = np.searchsorted(k, end, side="left")
    c = np.where(wrap, (m - pos - 1) + rank, rank - pos - 1).astype(np.int64)
    return int((c * (c - 1) // 2).sum())
