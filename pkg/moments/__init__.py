from .circle_rule import CircleRule, build_circle_rule
from .moments import (
    compute_moments, moment_error_probe, mean_square, moment_rows, fourier_sums,
    default_panels, DEFAULT_TOL,
)
