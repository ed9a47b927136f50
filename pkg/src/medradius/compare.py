"""Rank agreement between depth notions and the table reproductions."""

from dataclasses import dataclass, field

import numpy as np

from .depth import DepthMethod, depth_values, depth_weighted_centre, simplicial_depth_2d
from .errors import ConstantInputError, DimensionError, MedRadiusError
from .geometry import radial_center
from .sampling import Scenario, derived_seed, generate_scenario

TABLE_SCENARIOS = {1: "gaussian", 2: "skewed", 3: "bimodal"}
TABLE_METHODS = ("mrd", "mahalanobis", "tukey2d", "spatial", "simplicial2d", "projection")
SIMPLICIAL_POOL = 300

__all__ = ["spearman", "average_ranks", "depth_weighted_centre", "CorrelationReport",
           "table_depths", "reproduce_table"]


def average_ranks(a) -> np.ndarray:
    """Ranks 1..n with tied values sharing their average rank."""
    a = np.asarray(a, dtype=float).ravel()
    order = np.argsort(a, kind="mergesort")
    s = a[order]
    starts = np.flatnonzero(np.r_[True, s[1:] != s[:-1]])
    ends = np.r_[starts[1:], s.size]
    avg = (starts + ends + 1) / 2.0  # mean of positions start+1 .. end
    ranks = np.empty(a.size)
    ranks[order] = np.repeat(avg, ends - starts)
    return ranks


def spearman(x, y) -> float:
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise MedRadiusError("need at least two observations")
    rx, ry = average_ranks(x), average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    sxx, syy = (rx ** 2).sum(), (ry ** 2).sum()
    if sxx == 0 or syy == 0:
        raise ConstantInputError("constant input has no ranking")
    # one square root keeps perfect (anti)monotone pairs at exactly +-1
    return float(np.clip((rx * ry).sum() / np.sqrt(sxx * syy), -1.0, 1.0))


@dataclass
class CorrelationReport:
    methods: list
    corr: np.ndarray
    centre_dist: np.ndarray
    centres: dict
    n: int
    seed: int
    table: int = None
    scenario: str = None
    meta: dict = field(default_factory=dict)

    def entry(self, a, b, which="corr"):
        i, j = self.methods.index(a), self.methods.index(b)
        return float(getattr(self, which)[i, j])

    def as_dict(self):
        return {
            "table": self.table,
            "scenario": self.scenario,
            "n": self.n,
            "seed": self.seed,
            "methods": list(self.methods),
            "corr": [[float(v) for v in row] for row in self.corr],
            "centre_dist": [[float(v) for v in row] for row in self.centre_dist],
            "centres": {m: [float(c) for c in v] for m, v in self.centres.items()},
            "meta": dict(self.meta),
        }


def table_depths(x, seed, methods=TABLE_METHODS, n_dirs=1000,
                 simplicial_pool=None, center=None):
    """Depth of every observation under each method, in ``methods`` order.

    Simplicial depth uses all observations as triangle vertices unless
    ``simplicial_pool`` caps it to a seeded subsample of that size;
    projection directions are drawn from a seed derived from ``seed``.
    """
    out = {}
    for tag in methods:
        if tag == "mrd":
            if center is None:
                center = radial_center(x)
            out[tag] = depth_values(x, x, "mrd", center=center)
        elif tag == "projection":
            m = DepthMethod("projection", n_dirs=n_dirs,
                            seed=derived_seed(seed, "projection"))
            out[tag] = depth_values(x, x, m)
        elif tag == "simplicial2d" and simplicial_pool is not None and x.shape[0] > simplicial_pool:
            rng = np.random.default_rng(derived_seed(seed, "simplicial"))
            idx = np.sort(rng.choice(x.shape[0], size=simplicial_pool, replace=False))
            pool = x[idx]
            out[tag] = np.array([simplicial_depth_2d(pool, p) for p in x])
        else:
            out[tag] = depth_values(x, x, tag)
    return out, center


def correlation_report(x, depths, seed, **info) -> CorrelationReport:
    methods = list(depths)
    k = len(methods)
    corr = np.eye(k)
    dist = np.zeros((k, k))
    centres = {m: depth_weighted_centre(x, depths[m]) for m in methods}
    for i in range(k):
        for j in range(i + 1, k):
            corr[i, j] = corr[j, i] = spearman(depths[methods[i]], depths[methods[j]])
            dist[i, j] = dist[j, i] = np.sqrt(
                ((centres[methods[i]] - centres[methods[j]]) ** 2).sum())
    return CorrelationReport(methods=methods, corr=corr, centre_dist=dist,
                             centres=centres, n=x.shape[0], seed=seed, **info)


def reproduce_table(table, n=3000, seed=42, n_dirs=1000,
                    simplicial_pool=None) -> CorrelationReport:
    """Rank correlations and centre distances for one of the three designs
    (1 Gaussian, 2 skewed, 3 bimodal)."""
    if table not in TABLE_SCENARIOS:
        raise MedRadiusError(f"table must be one of {sorted(TABLE_SCENARIOS)}")
    if n < 100:
        raise MedRadiusError("tables need n >= 100")
    tag = TABLE_SCENARIOS[table]
    x = generate_scenario(Scenario(tag, n, seed))
    depths, center = table_depths(x, seed, n_dirs=n_dirs,
                                  simplicial_pool=simplicial_pool)
    meta = {"n_dirs": n_dirs, "simplicial_pool": simplicial_pool,
            "center": center.as_dict()}
    return correlation_report(x, depths, seed, table=table, scenario=tag, meta=meta)
