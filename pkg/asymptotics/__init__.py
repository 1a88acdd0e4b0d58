from .predict import (
    predict_logdet, bs_exact_logdet, chi_asymptotic, ln_nu, error_decay_fit, ratio_error,
    is_degenerate, szego_term, pair_term,
)
