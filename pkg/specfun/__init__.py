from .barnes import ln_gamma, ln_barnes_g, ln_barnes_g_ratio_run
