"""Multivariate median radius, geometric median and the radial center.

The median radius at v is the ceil(n/2)-th smallest Euclidean distance from v
to the rows of the data: the radius of the smallest closed ball centred at v
holding half of the observations.
"""

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import DegenerateScaleError, DimensionError, EmptySampleError, MedRadiusError

BB_RTOL = 1e-7
CENTER_METHODS = ("coordinate-median", "geometric-median", "radial-argmin")


def as_dataset(data) -> np.ndarray:
    """Validate ``data`` as an n x d float matrix and return a read-only copy.

    A 1D input is read as n observations of dimension 1.
    """
    x = np.array(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DimensionError("data must be a 2D array")
    if x.shape[0] == 0 or x.shape[1] == 0:
        raise EmptySampleError()
    if not np.all(np.isfinite(x)):
        raise MedRadiusError("data contains non-finite values")
    x.flags.writeable = False
    return x


def _point(data, v):
    v = np.asarray(v, dtype=float).ravel()
    if v.size != data.shape[1]:
        raise DimensionError(
            f"point has dimension {v.size}, data has dimension {data.shape[1]}")
    return v


def _half(n):
    return (n + 1) // 2


@dataclass(frozen=True)
class CenterEstimate:
    location: np.ndarray
    method: str
    g_at_center: float
    iterations: int = 0
    converged: bool = True

    def as_dict(self):
        return {
            "method": self.method,
            "location": [float(c) for c in self.location],
            "g_at_center": float(self.g_at_center),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


def g_multivariate(data, v) -> float:
    x = as_dataset(data)
    v = _point(x, v)
    k = _half(x.shape[0])
    dist = np.sqrt(((x - v) ** 2).sum(axis=1))
    return float(np.partition(dist, k - 1)[k - 1])


def g_many(data, points, chunk=512) -> np.ndarray:
    """Median radius at each row of ``points``."""
    x = as_dataset(data)
    q = np.atleast_2d(np.asarray(points, dtype=float))
    if q.shape[1] != x.shape[1]:
        raise DimensionError(
            f"points have dimension {q.shape[1]}, data has dimension {x.shape[1]}")
    k = _half(x.shape[0])
    out = np.empty(q.shape[0])
    for start in range(0, q.shape[0], chunk):
        block = q[start:start + chunk]
        dist = np.sqrt(((block[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))
        out[start:start + chunk] = np.partition(dist, k - 1, axis=1)[:, k - 1]
    return out


def coordinate_median(data) -> np.ndarray:
    return np.median(as_dataset(data), axis=0)


def geometric_median(data, tol=1e-10, max_iter=1000) -> CenterEstimate:
    """Weiszfeld iteration started at the coordinate median.

    When an iterate falls within ``tol`` of data points, the Vardi-Zhang
    modified step is used: the iterate stays put if the pull of the remaining
    points is no stronger than the coincident mass, and otherwise moves away.
    """
    x = as_dataset(data)
    y = coordinate_median(x)
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        diff = x - y
        dist = np.sqrt((diff ** 2).sum(axis=1))
        near = dist < tol
        eta = np.count_nonzero(near)
        far = ~near
        if not far.any():
            converged = True
            break
        w = 1.0 / dist[far]
        t = (w[:, None] * x[far]).sum(axis=0) / w.sum()
        if eta == 0:
            y_next = t
        else:
            pull = (w[:, None] * diff[far]).sum(axis=0)
            r = np.sqrt((pull ** 2).sum())
            if r <= eta:
                converged = True
                break
            beta = eta / r
            y_next = (1 - beta) * t + beta * y
        step = np.sqrt(((y_next - y) ** 2).sum())
        y = y_next
        if step < tol:
            converged = True
            break
    return CenterEstimate(location=y, method="geometric-median",
                          g_at_center=g_multivariate(x, y),
                          iterations=it, converged=converged)


# --- minimum enclosing ball helpers (used to refine the radial center) ---

def _circumcenter(a, b, c):
    abx, aby = b[0] - a[0], b[1] - a[1]
    acx, acy = c[0] - a[0], c[1] - a[1]
    det = 2.0 * (abx * acy - aby * acx)
    if det == 0:
        return None
    nb, nc = abx * abx + aby * aby, acx * acx + acy * acy
    return (a[0] + (acy * nb - aby * nc) / det,
            a[1] + (abx * nc - acx * nb) / det)


def _enclosing_circle(pts, rng):
    """Smallest enclosing circle in 2D (randomized incremental algorithm)."""
    pts = [tuple(p) for p in pts[rng.permutation(pts.shape[0])].tolist()]

    def outside(p, c, r):
        return math.hypot(p[0] - c[0], p[1] - c[1]) > r * (1 + 1e-12) + 1e-15

    c, r = pts[0], 0.0
    for i in range(1, len(pts)):
        if not outside(pts[i], c, r):
            continue
        c, r = pts[i], 0.0
        for j in range(i):
            if not outside(pts[j], c, r):
                continue
            c = ((pts[i][0] + pts[j][0]) / 2, (pts[i][1] + pts[j][1]) / 2)
            r = math.hypot(pts[i][0] - c[0], pts[i][1] - c[1])
            for m in range(j):
                if not outside(pts[m], c, r):
                    continue
                cc = _circumcenter(pts[i], pts[j], pts[m])
                if cc is None:
                    p, q = max(combinations((pts[i], pts[j], pts[m]), 2),
                               key=lambda pq: math.dist(*pq))
                    cc = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
                c = cc
                r = math.hypot(pts[i][0] - c[0], pts[i][1] - c[1])
    return np.array(c)


def _enclosing_center(pts, rng):
    d = pts.shape[1]
    if d == 1:
        return np.array([(pts.min() + pts.max()) / 2])
    if d == 2:
        return _enclosing_circle(pts, rng)
    # Badoiu-Clarkson core-set iteration; approximate, callers only keep it
    # when it improves the radius.
    c = pts.mean(axis=0)
    for t in range(1, 400):
        far = pts[np.argmax(((pts - c) ** 2).sum(axis=1))]
        c = c + (far - c) / (t + 1)
    return c


def _directions(d):
    eye = np.eye(d)
    dirs = [eye[i] * s for i in range(d) for s in (1.0, -1.0)]
    if d <= 10:
        for i, j in combinations(range(d), 2):
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    dirs.append((si * eye[i] + sj * eye[j]) / np.sqrt(2))
    if d == 2:
        ang = np.pi / 8 * np.arange(1, 16, 2)
        dirs.extend(np.column_stack([np.cos(ang), np.sin(ang)]))
    return np.array(dirs)


def _shortest_half(x):
    """Exact minimizer in 1D: midpoint of the shortest interval holding k points."""
    v = np.sort(x[:, 0])
    k = _half(v.size)
    widths = v[k - 1:] - v[:v.size - k + 1]
    i = int(np.argmin(widths))
    return np.array([(v[i] + v[i + k - 1]) / 2])


def _recentre(x, cur, g_cur, rng, rounds=50):
    """Move to the enclosing-ball centre of the k nearest rows while it helps."""
    k = _half(x.shape[0])
    for _ in range(rounds):
        dist = np.sqrt(((x - cur) ** 2).sum(axis=1))
        nearest = np.argsort(dist, kind="stable")[:k]
        cand = _enclosing_center(x[nearest], rng)
        dist = np.sqrt(((x - cand) ** 2).sum(axis=1))
        g_c = float(np.partition(dist, k - 1)[k - 1])
        if not g_c < g_cur:
            break
        cur, g_cur = cand, g_c
    return cur, g_cur


def _branch_and_bound(x, cur, g_cur, atol, rng, max_levels=80,
                      max_cells=200_000, n_polish=16):
    """Lipschitz branch-and-bound over boxes covering the data.

    G is 1-Lipschitz, so a box with centre value G(c) and half-diagonal rho
    cannot contain a value below G(c) - rho.  Boxes that cannot beat the
    incumbent by more than ``atol`` are dropped; an empty queue certifies the
    incumbent.  The lowest boxes of the last level are then polished by
    enclosing-ball re-centring.  Returns (location, g, levels, certified).
    """
    d = x.shape[1]
    lo = x.min(axis=0) - g_cur
    hi = x.max(axis=0) + g_cur
    side = float((hi - lo).max()) / 16
    if side == 0:
        return cur, g_cur, 0, True
    axes = [lo[j] + side * (np.arange(max(1, int(np.ceil((hi[j] - lo[j]) / side)))) + 0.5)
            for j in range(d)]
    cells = np.array(np.meshgrid(*axes, indexing="ij")).reshape(d, -1).T
    corners = np.array(list(product((0.5, -0.5), repeat=d)))
    certified = False
    level = 0
    while level < max_levels:
        level += 1
        vals = g_many(x, cells, chunk=256)
        evaluated = cells
        order = np.argsort(vals, kind="stable")
        if vals[order[0]] < g_cur:
            cur, g_cur = cells[order[0]].copy(), float(vals[order[0]])
        rho = side * np.sqrt(d) / 2
        live = vals - rho < g_cur - atol
        if not live.any():
            certified = True
            break
        if np.count_nonzero(live) * corners.shape[0] > max_cells:
            break
        side /= 2
        cells = (cells[live][:, None, :] + side * corners[None, :, :]).reshape(-1, d)
    for i in order[:n_polish]:
        cand, g_c = _recentre(x, evaluated[i], np.inf, rng)
        if g_c < g_cur:
            cur, g_cur = cand, g_c
    return cur, g_cur, level, certified


def radial_center(data, tol=1e-10, max_iter=200) -> CenterEstimate:
    """Approximate minimizer of the median radius.

    Every data row, the coordinate median and the geometric median are
    scored; the best one is refined by alternating two moves until neither
    helps: re-centring on the minimum enclosing ball of the ceil(n/2) nearest
    rows, and a compass search over the coordinate axes (plus diagonals in
    low dimension) with step halving from range/4 down to ``tol``.

    In one dimension the exact minimizer (midpoint of the shortest interval
    holding half the data) is also a candidate.  In two and three dimensions
    the result is then certified by Lipschitz branch-and-bound to within
    ``tol``; ``converged`` reports whether that certificate was obtained.  In
    higher dimension only the local refinement runs.  The result is never
    worse than any starting candidate.
    """
    x = as_dataset(data)
    n, d = x.shape
    k = _half(n)
    starts = [x, coordinate_median(x)[None, :],
              geometric_median(x, tol=tol).location[None, :]]
    if d == 1:
        starts.append(_shortest_half(x)[None, :])
    cands = np.vstack(starts)
    scores = g_many(x, cands)
    best = int(np.argmin(scores))
    cur, g_cur = cands[best].copy(), float(scores[best])

    def score(v):
        dist = np.sqrt(((x - v) ** 2).sum(axis=1))
        return float(np.partition(dist, k - 1)[k - 1])

    rng = np.random.default_rng(0)
    dirs = _directions(d)
    span = float((x.max(axis=0) - x.min(axis=0)).max())
    it = 0
    converged = False
    while it < max_iter and g_cur > 0:
        it += 1
        moved = False
        # enclosing-ball re-centring
        cand, g_c = _recentre(x, cur, g_cur, rng)
        if g_c < g_cur:
            cur, g_cur, moved = cand, g_c, True
        # compass search
        step = span / 4
        while step >= tol and g_cur > 0:
            improved = False
            for u in dirs:
                cand = cur + step * u
                g_c = score(cand)
                if g_c < g_cur:
                    cur, g_cur = cand, g_c
                    improved = moved = True
                    break
            if not improved:
                step /= 2
        if not moved:
            converged = True
            break
    if g_cur == 0:
        converged = True
    elif d == 1:
        converged = True
    elif d <= 3:
        cur, g_cur, levels, converged = _branch_and_bound(
            x, cur, g_cur, max(tol, BB_RTOL * g_cur), rng)
        it += levels
    else:
        converged = False
    return CenterEstimate(location=cur, method="radial-argmin",
                          g_at_center=g_cur, iterations=it, converged=converged)


def compute_center(data, method="radial-argmin", tol=1e-10) -> CenterEstimate:
    if method in ("radial", "radial-argmin"):
        return radial_center(data, tol=tol)
    if method in ("gmedian", "geometric-median"):
        return geometric_median(data, tol=tol)
    if method == "coordinate-median":
        loc = coordinate_median(data)
        return CenterEstimate(location=loc, method=method,
                              g_at_center=g_multivariate(data, loc))
    raise MedRadiusError(f"unknown center method {method!r}")


def central_scale(data, center: CenterEstimate) -> float:
    return g_multivariate(data, center.location)


def h_multivariate(data, v, center: CenterEstimate) -> float:
    scale = central_scale(data, center)
    if scale == 0:
        raise DegenerateScaleError("median radius at the center is zero")
    return g_multivariate(data, v) / scale
