from .symbol import (
    validate, evaluate, seminorm, wiener_hopf_at, wiener_hopf_log_at, jump_delta_f,
    smooth_part, log_symbol, node_geometry, load_symbol, dump_symbol, symbol_from_dict,
    symbol_to_dict,
)
