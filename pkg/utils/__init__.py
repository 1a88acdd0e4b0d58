from .cmd_shell import ToeplitzShell, parse_config, parse_n_grid
