"""
Command-line Interface Module for the Fisher-Hartwig Toeplitz Toolkit

This module provides the command front end, built on Python's cmd module the way a
shell would be, but driven one command at a time from the process arguments:
- Parses each subcommand's flags into a RunConfig
- Hands the config to the RunContext coordinator
- Keeps the exit status of the last command

Subcommands: predict, exact, compare, sweep, verify-ab, verify-t, heine, chi.
"""

import argparse
import functools
import cmd
import shlex
import sys

from app import DEFAULT_WORKERS, EXIT_INVALID, EXIT_OK, RunContext
from fh_structs import FORMATS, RunConfig
from fh_structs.fh_errors import ConfigError


def parse_n_grid(text: str) -> list[int]:
    """
    Orders from "a..b" (inclusive range) or a comma list.

    Example:
        >>> parse_n_grid("1..4"), parse_n_grid("16,32,64")
        ([1, 2, 3, 4], [16, 32, 64])
    """
    try:
        if ".." in text:
            first, last = text.split("..", 1)
            return list(range(int(first), int(last) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError(f"cannot parse n-grid {text!r}: {e}") from e


def build_parser(subcommand: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=subcommand, add_help=False)
    parser.add_argument("--symbol", action="append", default=[], help="symbol JSON file (repeatable for sweep)")
    orders = parser.add_mutually_exclusive_group(required=True)
    orders.add_argument("--n", type=int, help="single order")
    orders.add_argument("--n-grid", help='orders as "a..b" or "n1,n2,..."')
    parser.add_argument("--tol", type=float, default=1e-12)
    parser.add_argument("--fd-step", type=float, default=1e-4)
    parser.add_argument("--output", default="-")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--robust-fit", action="store_true")
    parser.add_argument("--nu", type=int, default=0)
    parser.add_argument("--gamma", choices=("alpha", "beta"), default="alpha")
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    return parser


def parse_config(subcommand: str, argv: list[str]) -> RunConfig:
    """
    Turn the flags of one subcommand into a validated RunConfig.

    Raises:
        ConfigError: Unknown or malformed flags, or values RunConfig rejects
    """
    parser = build_parser(subcommand)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already printed its usage message
        raise ConfigError(f"invalid arguments for {subcommand}") from e
    n_grid = [ns.n] if ns.n is not None else parse_n_grid(ns.n_grid)
    return RunConfig(
        subcommand=subcommand, symbol_paths=ns.symbol, n_grid=n_grid, tol=ns.tol,
        fd_step=ns.fd_step, output=ns.output, format=ns.format, robust_fit=ns.robust_fit,
        nu=ns.nu, gamma_kind=ns.gamma, t=ns.t, workers=ns.workers,
    )


def run_command(subcommand: str):
    """
    Decorator turning a do_* method into a RunConfig-driven command.

    The wrapped method receives the raw argument string; it is split with shlex,
    parsed into a RunConfig and executed by the shell's RunContext. The exit status
    ends up in self.status.

    Example:
        @run_command("exact")
        def do_exact(self, arg):
            "exact --symbol FILE (--n N | --n-grid GRID)"
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(self, arg):
            try:
                config = parse_config(subcommand, shlex.split(arg))
            except (ValueError, ConfigError) as e:
                print(f"ERROR: {e}", file=sys.stderr)
                self.status = EXIT_INVALID
                return
            self.status = self.app.run(config)
        return wrapper
    return decorator


class ToeplitzShell(cmd.Cmd):
    """
    Command interpreter for the toolkit.

    Every subcommand reads its flags, builds a RunConfig and runs it through the
    RunContext. Hyphenated subcommand names (verify-ab, verify-t) map to
    do_verify_ab / do_verify_t.
    """

    prompt = "fh> "

    def __init__(self):
        super().__init__()
        self.app = RunContext()
        self.status = EXIT_OK

    def precmd(self, line):
        head, sep, rest = line.strip().partition(" ")
        return head.replace("-", "_") + sep + rest

    def emptyline(self):
        pass

    def default(self, line):
        print(f"ERROR: unknown command {line.split()[0]!r}, type help", file=sys.stderr)
        self.status = EXIT_INVALID

    @run_command("predict")
    def do_predict(self, arg):
        """predict --symbol FILE (--n N | --n-grid GRID): additive terms of the large-n formula."""

    @run_command("exact")
    def do_exact(self, arg):
        """exact --symbol FILE (--n N | --n-grid GRID): ln D_n, chi_{n-1}^2 and D_n."""

    @run_command("compare")
    def do_compare(self, arg):
        """compare --symbol FILE --n-grid GRID [--robust-fit]: ratio errors and fitted decay slope."""

    @run_command("sweep")
    def do_sweep(self, arg):
        """sweep --symbol FILE [--symbol FILE ...] --n-grid GRID: compare for several symbols."""

    @run_command("verify-ab")
    def do_verify_ab(self, arg):
        """verify-ab --symbol FILE --n N [--nu J] [--gamma alpha|beta]: identity in alpha_J or beta_J."""

    @run_command("verify-t")
    def do_verify_t(self, arg):
        """verify-t --symbol FILE --n N [--t T]: identity in the deformation parameter."""

    @run_command("heine")
    def do_heine(self, arg):
        """heine --symbol FILE --n-grid 1..3: D_n from the multiple integral against the series."""

    @run_command("chi")
    def do_chi(self, arg):
        """chi --symbol FILE --n-grid GRID: exact chi_{n-1}^2 against its large-n form."""

    def do_help(self, arg=None):

        print("\nFisher-Hartwig Toeplitz toolkit.\n")
        print("Available commands:\n")

        for name in ("predict", "exact", "compare", "sweep", "verify_ab", "verify_t", "heine", "chi"):
            print(f"  {getattr(self, 'do_' + name).__doc__}")
            print()

        print("Common flags:")
        print("  --tol TOL (1e-12)  --fd-step H (1e-4)  --output PATH (-)  --format csv|json")
        print("  --workers W (FH_WORKERS or 1)")
        print()
        print("Exit status: 0 ok, 2 invalid input, 3 numerical breakdown.")
        print()

    def do_h(self, arg=None):
        """
        Shortcut for the help command.

        Usage: h
        """
        self.do_help()
