from .logdet import (
    logdet_series_elimination, logdet_series_recursion, logdet_series, heine_direct, log_minor,
)
