"""Data behind the figures: univariate profiles, contour fields and the
high-dimensional breakdown record.  Nothing here draws; plots are left to
whatever consumes the CSV/JSON output."""

from dataclasses import dataclass

import numpy as np

from .depth import DepthMethod, GridSpec, depth_field, mahalanobis_depth
from .errors import MedRadiusError, SingularCovarianceError
from .geometry import g_many, radial_center
from .radial import median_univariate, profile
from .sampling import RngStream, Scenario, derived_seed, generate_scenario

PROFILE_POINTS = 400
FIGURE_IDS = (1, 2, 3, 4, 5, 6, 7)


@dataclass
class FigureReport:
    """``kind`` is "profile", "field" or "record"; ``payload`` holds the
    RadialProfile, GridField or a plain dict accordingly."""
    figure: int
    kind: str
    payload: object
    data: np.ndarray
    params: dict


def profile_grid(sample, points=PROFILE_POINTS, pad=1.0):
    x = np.asarray(sample, dtype=float).ravel()
    return np.linspace(x.min() - pad, x.max() + pad, points)


def highdim_record(n=20, d=50, seed=0, n_queries=100):
    """Whether the Mahalanobis depth and the median radius survive d > n."""
    x = generate_scenario(Scenario("highdim", n, seed, d=d))
    queries = RngStream(derived_seed(seed, "queries")).normal((n_queries, d))
    try:
        mahalanobis_depth(x, queries[0])
        singular = False
    except SingularCovarianceError:
        singular = True
    center = radial_center(x)
    g = g_many(x, queries)
    if center.g_at_center > 0:
        h = g / center.g_at_center
    else:
        h = np.full_like(g, np.inf)
    record = {
        "d": d,
        "n": n,
        "covariance_singular": singular,
        "g_finite": bool(np.all(np.isfinite(g))),
        "h_finite": bool(np.all(np.isfinite(h))),
        "n_queries": n_queries,
        "g_min": float(g.min()),
        "g_max": float(g.max()),
        "central_scale": float(center.g_at_center),
    }
    return x, record


def reproduce_figure(fig, n=None, seed=None, d=50, m=200, grid_n=100,
                     margin=0.1, n_dirs=1000, trim=0.25) -> FigureReport:
    """Regenerate the data for one figure.

    1-3: radial profiles of the normal, trimodal and contaminated designs on a
    400-point grid spanning the data range +-1, with h relative to the sample
    median.  4, 5: g/h fields with classical and trimmed Mahalanobis depth for
    the bimodal and skewed designs.  6: the d > n record.  7: all depth
    fields for the bimodal design.
    """
    if fig not in FIGURE_IDS:
        raise MedRadiusError(f"figure must be one of {FIGURE_IDS}")
    needs_seed = fig in (3, 4, 5, 6, 7)
    if needs_seed and seed is None:
        raise MedRadiusError(f"figure {fig} is random and needs a seed")
    params = {"figure": fig, "seed": seed}

    if fig in (1, 2, 3):
        if fig == 1:
            s = Scenario("normal1d", m)
        elif fig == 2:
            s = Scenario("trimodal1d", m)
        else:
            s = Scenario("contaminated1d", n or 100, seed)
        x = generate_scenario(s)[:, 0]
        center = median_univariate(x)
        prof = profile(x, profile_grid(x), center)
        params.update(scenario=s.tag, n=s.n, points=PROFILE_POINTS, center=center)
        return FigureReport(fig, "profile", prof, x[:, None], params)

    if fig == 6:
        n = n or 20
        x, record = highdim_record(n=n, d=d, seed=seed)
        params.update(scenario="highdim", n=n, d=d)
        return FigureReport(fig, "record", record, x, params)

    tag = "skewed" if fig == 5 else "bimodal"
    n = n or 1000
    x = generate_scenario(Scenario(tag, n, seed))
    if fig == 7:
        methods = [DepthMethod("mrd"), DepthMethod("mahalanobis"),
                   DepthMethod("spatial"), DepthMethod("tukey2d"),
                   DepthMethod("projection", n_dirs=n_dirs,
                               seed=derived_seed(seed, "projection")),
                   DepthMethod("simplicial2d")]
    else:
        methods = [DepthMethod("mahalanobis"),
                   DepthMethod("robust-mahalanobis", trim=trim)]
    grid = GridSpec.around(x, grid_n, margin)
    field = depth_field(x, methods, grid)
    params.update(scenario=tag, n=n, grid_n=grid_n, margin=margin)
    return FigureReport(fig, "field", field, x, params)


def profile_argmin(prof) -> float:
    return float(prof.v[int(np.argmin(prof.g))])


