"""Derivative estimates for the holomorphic motion of Julia sets of z^2 + c and mu z (1 - z).

Submodules: families (maps, orbits, conjugacy), julia (point clouds), motion
(derivative series and the bound checks), metric (singular metric, Koenigs
coordinate), symbolic (kneading), hausdorff (set distances), cli.
"""

from .errors import HolomotionError
from .families import Family, Parameter
from .julia import PointCloud, sample_inverse_iteration, real_pullback
from .hausdorff import hausdorff_distance
from .motion import dzdc_series, dzdmu_series
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "Family", "HolomotionError", "Parameter", "PointCloud", "Report",
    "dzdc_series", "dzdmu_series", "hausdorff_distance", "real_pullback",
    "sample_inverse_iteration",
]
