"""Median-radius functional, the depth built on it, and comparison depths."""

from .compare import CorrelationReport, reproduce_table, spearman
from .depth import (DepthMethod, DepthReport, GridField, GridSpec, depth_field,
                    depth_report, depth_values, depth_weighted_centre,
                    mahalanobis_depth, mrd_depth, projection_depth,
                    robust_mahalanobis_distance, simplicial_depth_2d, spatial_depth,
                    tukey_depth_2d)
from .errors import MedRadiusError
from .figures import FigureReport, reproduce_figure
from .geometry import (CenterEstimate, compute_center, coordinate_median, g_many,
                       g_multivariate, geometric_median, h_multivariate, radial_center)
from .io import read_dataset, write_report
from .radial import (RadialProfile, boundary_mass, curvature, g_univariate,
                     h_univariate, median_univariate, profile, subgradient)
from .sampling import Scenario, generate_scenario, rng_stream, std_normal_quantile
