"""Median-radius depth and the comparison depths.

Every ``*_depth`` function scores a single query point; ``depth_values``
scores many query points for one method and is what the harness and the CLI
use.  Values lie in [0, 1], larger meaning more central.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _angular
from .errors import (AllDirectionsDegenerateError, CenterNotMinimalError,
                     DegenerateScaleError, DimensionError, MedRadiusError,
                     SingularCovarianceError)
from .geometry import (CenterEstimate, as_dataset, central_scale, compute_center,
                       coordinate_median, g_many, _point)

METHODS = ("mrd", "mahalanobis", "robust-mahalanobis", "spatial", "tukey2d",
           "simplicial2d", "projection")
CLAMP_TOL = 1e-9
COND_LIMIT = 1e12


@dataclass(frozen=True)
class DepthMethod:
    """A depth method and its parameters.

    ``seed`` is required for ``projection``; ``trim`` only affects
    ``robust-mahalanobis``.
    """
    tag: str
    n_dirs: int = 1000
    seed: int = None
    trim: float = 0.25

    def __post_init__(self):
        if self.tag not in METHODS:
            raise MedRadiusError(f"unknown depth method {self.tag!r}")
        if self.tag == "projection" and self.seed is None:
            raise MedRadiusError("projection depth needs an explicit seed")


def _need_2d(x, name):
    if x.shape[1] != 2:
        raise DimensionError(f"{name} requires bivariate data, got d={x.shape[1]}")


# --- median-radius depth ----------------------------------------------------

def _mrd_from_radii(scale, radii):
    if scale == 0:
        raise DegenerateScaleError("median radius at the center is zero")
    ratio = scale / np.asarray(radii, dtype=float)
    worst = float(ratio.max()) if ratio.size else 0.0
    if worst > 1 + CLAMP_TOL:
        raise CenterNotMinimalError(
            f"a query point has median radius below the center's (ratio {worst!r})")
    return np.minimum(ratio, 1.0)


def mrd_depth(data, v, center: CenterEstimate = None) -> float:
    """Median radius at the center divided by the median radius at ``v``.

    ``center`` defaults to the radial center (the argmin of the median radius).
    """
    x = as_dataset(data)
    v = _point(x, v)
    if center is None:
        center = compute_center(x)
    return float(_mrd_from_radii(central_scale(x, center), g_many(x, v[None, :]))[0])


# --- covariance based ---------------------------------------------------------

def _check_covariance(cov, n, d):
    if n < 2:
        raise SingularCovarianceError("need at least two observations")
    if np.linalg.matrix_rank(cov) < d:
        raise SingularCovarianceError(
            f"sample covariance has rank below d={d} (n={n})")
    cond = np.linalg.cond(cov)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularCovarianceError(f"sample covariance condition number {cond:.3g}")


def _mahalanobis_fit(x):
    n, d = x.shape
    mean = x.mean(axis=0)
    cov = np.atleast_2d(np.cov(x, rowvar=False, ddof=1)) if n > 1 else np.zeros((d, d))
    _check_covariance(cov, n, d)
    return mean, cov


def _quadratic_form(points, mean, cov):
    diff = np.atleast_2d(points) - mean
    sol = np.linalg.solve(cov, diff.T).T
    return np.maximum((diff * sol).sum(axis=1), 0.0)


def mahalanobis_depth(data, v) -> float:
    x = as_dataset(data)
    v = _point(x, v)
    mean, cov = _mahalanobis_fit(x)
    return float(1.0 / (1.0 + _quadratic_form(v, mean, cov)[0]))


def _robust_fit(x, trim):
    if not 0 < trim <= 0.5:
        raise MedRadiusError("trim must lie in (0, 0.5]")
    n, d = x.shape
    med = coordinate_median(x)
    k = (n + 1) // 2
    mad = np.partition(np.abs(x - med), k - 1, axis=0)[k - 1]
    mad = np.where(mad > 0, mad, 1.0)
    initial = np.sqrt((((x - med) / mad) ** 2).sum(axis=1))
    keep = int(np.ceil((1 - trim) * n))
    if keep <= d:
        raise SingularCovarianceError(
            f"{keep} retained points cannot support a {d}-dimensional covariance")
    kept = x[np.argsort(initial, kind="stable")[:keep]]
    return _mahalanobis_fit(kept)


def robust_mahalanobis_distance(data, v, trim=0.25) -> float:
    """Mahalanobis distance under a one-step trimmed location/scatter estimate.

    Points are ranked by their coordinate-median/MAD standardized distance, the
    closest ceil((1 - trim) n) are kept, and their mean and covariance are used.
    This is a simple stand-in for MCD-type estimators.
    """
    x = as_dataset(data)
    v = _point(x, v)
    mean, cov = _robust_fit(x, trim)
    return float(np.sqrt(_quadratic_form(v, mean, cov)[0]))


# --- spatial, halfspace, simplicial, projection ----------------------------

def _spatial_many(x, points, chunk=256):
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], chunk):
        diff = x[None, :, :] - points[start:start + chunk, None, :]
        norm = np.sqrt((diff ** 2).sum(axis=2))
        live = norm > 0
        unit = np.divide(diff, norm[:, :, None], out=np.zeros_like(diff),
                         where=live[:, :, None])
        count = live.sum(axis=1)
        mean = unit.sum(axis=1) / np.maximum(count, 1)[:, None]
        dep = 1.0 - np.sqrt((mean ** 2).sum(axis=1))
        out[start:start + chunk] = np.where(count > 0, np.clip(dep, 0.0, 1.0), 1.0)
    return out


def spatial_depth(data, v) -> float:
    """One minus the norm of the average unit vector from ``v`` to the data.

    Observations equal to ``v`` are left out of the average; if all are equal
    to ``v`` the depth is 1.
    """
    x = as_dataset(data)
    v = _point(x, v)
    return float(_spatial_many(x, v[None, :])[0])


def tukey_depth_2d(data, v) -> float:
    """Exact halfspace depth in the plane by an angular sweep around ``v``.

    Closed half-planes are used, so observations equal to ``v`` count in every
    half-plane.
    """
    x = as_dataset(data)
    _need_2d(x, "tukey depth")
    v = _point(x, v)
    diff, same = _angular.split_coincident(x, v)
    low = _angular.min_closed_halfplane(_angular.direction_keys(diff))
    return (low + same) / x.shape[0]


def simplicial_depth_2d(data, v) -> float:
    """Fraction of data triangles whose closed hull contains ``v``.

    Counted in O(n log n): a triangle misses ``v`` exactly when its vertices
    lie in an open half-plane through ``v``, and those triangles are counted
    from the angular order of the observations around ``v``.
    """
    x = as_dataset(data)
    _need_2d(x, "simplicial depth")
    n = x.shape[0]
    if n < 3:
        raise MedRadiusError("simplicial depth needs at least 3 observations")
    v = _point(x, v)
    diff, _ = _angular.split_coincident(x, v)
    total = comb(n, 3)
    missing = _angular.open_halfplane_pairs(_angular.direction_keys(diff))
    return (total - missing) / total


def _directions(d, n_dirs, seed):
    if n_dirs < 1:
        raise MedRadiusError("n_dirs must be positive")
    u = np.random.default_rng(seed).standard_normal((n_dirs, d))
    return u / np.sqrt((u ** 2).sum(axis=1))[:, None]


def _projection_fit(x, n_dirs, seed):
    u = _directions(x.shape[1], n_dirs, seed)
    proj = x @ u.T
    med = np.median(proj, axis=0)
    k = (x.shape[0] + 1) // 2
    mad = np.partition(np.abs(proj - med), k - 1, axis=0)[k - 1]
    live = mad > 0
    if not live.any():
        raise AllDirectionsDegenerateError("every sampled direction has zero MAD")
    return u[live], med[live], mad[live]


def _projection_many(x, points, n_dirs, seed, chunk=512):
    u, med, mad = _projection_fit(x, n_dirs, seed)
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], chunk):
        p = points[start:start + chunk] @ u.T
        out[start:start + chunk] = 1.0 / (1.0 + (np.abs(p - med) / mad).max(axis=1))
    return out


def projection_depth(data, v, n_dirs=1000, *, seed) -> float:
    """Projection depth with the supremum over directions approximated by
    ``n_dirs`` uniformly random directions drawn from ``seed``."""
    x = as_dataset(data)
    v = _point(x, v)
    return float(_projection_many(x, v[None, :], n_dirs, seed)[0])


# --- many points, many methods ------------------------------------------------

def depth_values(data, points, method, center: CenterEstimate = None) -> np.ndarray:
    """Depth of every row of ``points`` under one method.

    ``method`` is a :class:`DepthMethod` or a tag string.  For ``mrd`` the
    radial center is computed when ``center`` is not given.
    """
    if isinstance(method, str):
        method = DepthMethod(method)
    x = as_dataset(data)
    q = np.atleast_2d(np.asarray(points, dtype=float))
    if q.shape[1] != x.shape[1]:
        raise DimensionError(
            f"points have dimension {q.shape[1]}, data has dimension {x.shape[1]}")
    tag = method.tag
    if tag == "mrd":
        if center is None:
            center = compute_center(x)
        return _mrd_from_radii(central_scale(x, center), g_many(x, q))
    if tag == "mahalanobis":
        mean, cov = _mahalanobis_fit(x)
        return 1.0 / (1.0 + _quadratic_form(q, mean, cov))
    if tag == "robust-mahalanobis":
        mean, cov = _robust_fit(x, method.trim)
        return 1.0 / (1.0 + _quadratic_form(q, mean, cov))
    if tag == "spatial":
        return _spatial_many(x, q)
    if tag == "projection":
        return _projection_many(x, q, method.n_dirs, method.seed)
    if tag == "tukey2d":
        return np.array([tukey_depth_2d(x, p) for p in q])
    if tag == "simplicial2d":
        return np.array([simplicial_depth_2d(x, p) for p in q])
    raise MedRadiusError(f"unknown depth method {tag!r}")


def depth_weighted_centre(data, depths) -> np.ndarray:
    x = as_dataset(data)
    w = np.asarray(depths, dtype=float).ravel()
    if w.size != x.shape[0]:
        raise DimensionError(f"{w.size} depths for {x.shape[0]} observations")
    if np.any(w < 0):
        raise MedRadiusError("depths must be nonnegative")
    total = w.sum()
    if not total > 0:
        raise MedRadiusError("depths sum to zero")
    return (w[:, None] * x).sum(axis=0) / total


@dataclass
class DepthReport:
    points: np.ndarray
    depths: dict
    centres: dict
    center: CenterEstimate = None

    def as_dict(self):
        out = {
            "methods": list(self.depths),
            "points": [[float(c) for c in p] for p in self.points],
            "depths": {m: [float(v) for v in d] for m, d in self.depths.items()},
            "centres": {m: ([float(c) for c in ctr] if ctr is not None else None)
                        for m, ctr in self.centres.items()},
        }
        if self.center is not None:
            out["center"] = self.center.as_dict()
        return out


def depth_report(data, points, methods, center: CenterEstimate = None) -> DepthReport:
    x = as_dataset(data)
    q = np.atleast_2d(np.asarray(points, dtype=float))
    methods = [DepthMethod(m) if isinstance(m, str) else m for m in methods]
    if center is None and any(m.tag == "mrd" for m in methods):
        center = compute_center(x)
    depths, centres = {}, {}
    for m in methods:
        d = depth_values(x, q, m, center=center)
        depths[m.tag] = d
        centres[m.tag] = depth_weighted_centre(q, d) if d.sum() > 0 else None
    return DepthReport(points=q, depths=depths, centres=centres, center=center)


# --- grid fields --------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    x_range: tuple
    y_range: tuple
    nx: int = 100
    ny: int = 100

    @classmethod
    def around(cls, data, n=100, margin=0.1):
        """Bounding box of ``data`` widened by ``margin`` times its range."""
        x = as_dataset(data)
        _need_2d(x, "grid")
        lo, hi = x.min(axis=0), x.max(axis=0)
        pad = margin * (hi - lo)
        return cls((float(lo[0] - pad[0]), float(hi[0] + pad[0])),
                   (float(lo[1] - pad[1]), float(hi[1] + pad[1])), n, n)

    def axes(self):
        if self.nx < 1 or self.ny < 1:
            raise MedRadiusError("grid resolution must be positive")
        xs = np.linspace(*self.x_range, self.nx) if self.nx > 1 else np.array([np.mean(self.x_range)])
        ys = np.linspace(*self.y_range, self.ny) if self.ny > 1 else np.array([np.mean(self.y_range)])
        return xs, ys


@dataclass
class GridField:
    """Scalar layers on a rectangular grid; ``layers[name][i, j]`` is the
    value at ``(xs[i], ys[j])``.  Undefined layers are all-NaN and the reason
    is kept in ``errors``."""
    xs: np.ndarray
    ys: np.ndarray
    layers: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def nodes(self):
        gx, gy = np.meshgrid(self.xs, self.ys, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel()])


def depth_field(data, methods, grid: GridSpec, center: CenterEstimate = None) -> GridField:
    """Evaluate g, h and each requested depth at every grid node."""
    x = as_dataset(data)
    _need_2d(x, "depth field")
    xs, ys = grid.axes()
    out = GridField(xs=xs, ys=ys)
    nodes = out.nodes()
    shape = (xs.size, ys.size)
    methods = [DepthMethod(m) if isinstance(m, str) else m for m in methods]
    if center is None:
        center = compute_center(x)
    g = g_many(x, nodes)
    out.layers["g"] = g.reshape(shape)
    scale = central_scale(x, center)
    if scale > 0:
        out.layers["h"] = (g / scale).reshape(shape)
    else:
        out.layers["h"] = np.full(shape, np.nan)
        out.errors["h"] = DegenerateScaleError.code
    for m in methods:
        try:
            vals = depth_values(x, nodes, m, center=center)
        except (SingularCovarianceError, DegenerateScaleError,
                CenterNotMinimalError, AllDirectionsDegenerateError) as exc:
            out.layers[m.tag] = np.full(shape, np.nan)
            out.errors[m.tag] = exc.code
            continue
        out.layers[m.tag] = vals.reshape(shape)
    return out
