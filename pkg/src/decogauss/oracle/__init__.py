"""Independent numerical checks of the closed forms."""

from .convolution import brute_force_point, evolve_by_convolution
from .grid import Grid2D, GridDensityMatrix, default_grid
from .master_equation import Trajectory, integrate_master_equation
from .quadrature import GridMoments, moments_from_grid, sample_density, to_momentum
from .report import OracleReport, compare, failure, tolerances, worst, write_reports_csv

__all__ = [
    "Grid2D",
    "GridDensityMatrix",
    "GridMoments",
    "OracleReport",
    "Trajectory",
    "brute_force_point",
    "compare",
    "default_grid",
    "evolve_by_convolution",
    "failure",
    "integrate_master_equation",
    "moments_from_grid",
    "sample_density",
    "to_momentum",
    "tolerances",
    "worst",
    "write_reports_csv",
]
