"""
Run Context Module for the Fisher-Hartwig Toeplitz Toolkit

This module provides the central coordinator behind the command shell. For one
parsed RunConfig it:
- Loads and validates the symbol files
- Runs the requested pipeline (predict, exact, compare, sweep, verify-ab,
  verify-t, heine, chi)
- Funnels all rows through a single ordered ResultSink
- Maps failures to integer status codes

Operational settings (thread-pool width, log level) come from environment
variables; numerical parameters only ever come from the RunConfig.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import math
import os
from pathlib import Path
import sys

from dotenv import load_dotenv

from fh_structs import DeterminantSeries, FhSymbol, RunConfig
from fh_structs.fh_errors import (
    ConfigError, DegenerateParameters, FisherHartwigError, InsufficientData, NumericalBreakdown,
    OutOfValidity, PreconditionViolated, SpecialFunctionError, SymbolError, ToleranceNotMet,
)
from fh_symbol import load_symbol
from moments import compute_moments
from determinant import heine_direct, logdet_series
from asymptotics import chi_asymptotic, error_decay_fit, predict_logdet, ratio_error
from diffid import verify_identity_alpha_beta, verify_identity_t
from .result_sink import ResultSink

# Load environment variables with override capability
load_dotenv(override=True)

# Thread-pool width used when a command does not pass --workers
DEFAULT_WORKERS = int(os.environ.get("FH_WORKERS", 1))
LOG_LEVEL = os.environ.get("LOG_LEVEL", "WARNING").upper()

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BREAKDOWN = 3

logger = logging.getLogger(__name__)

_INVALID = (ConfigError, SymbolError, SpecialFunctionError, PreconditionViolated,
            DegenerateParameters, OutOfValidity, InsufficientData)
_BREAKDOWN = (NumericalBreakdown, ToleranceNotMet)


def status_for(error: FisherHartwigError) -> int:
    """Exit status for a failed run: 3 for numerical trouble, 2 for invalid input."""
    if isinstance(error, _BREAKDOWN):
        return EXIT_BREAKDOWN
    if not isinstance(error, _INVALID):
        logger.warning("unclassified error %s mapped to exit status %d", type(error).__name__, EXIT_INVALID)
    return EXIT_INVALID


def _breakdown_row(n: int | None, complex_columns: tuple[str, ...], real_columns: tuple[str, ...] = ()) -> dict:
    """Placeholder row for the order at which the series stopped."""
    row = {"n": n}
    row.update({c: complex(math.nan, math.nan) for c in complex_columns})
    row.update({c: math.nan for c in real_columns})
    row["method"] = "breakdown"
    return row


class RunContext:
    """
    Coordinator for one shell command.

    Each pipeline method takes a RunConfig and a ResultSink and returns an exit status.
    run() wraps them, catching every toolkit error and printing its message to
    standard error.
    """

    def __init__(self):
        # subcommand -> pipeline method
        self.pipelines = {
            "predict": self.predict,
            "exact": self.exact,
            "compare": self.compare,
            "sweep": self.sweep,
            "verify-ab": self.verify_ab,
            "verify-t": self.verify_t,
            "heine": self.heine,
            "chi": self.chi,
        }

    def run(self, config: RunConfig) -> int:
        """
        Execute one configured command.

        Args:
            config (RunConfig): Parsed command

        Returns:
            int: 0 on success, 2 on a validation error, 3 on a numerical breakdown

        Example:
            >>> status = RunContext().run(RunConfig("exact", ["alpha1.json"], [1, 2, 3], output="d.csv"))
            >>> status
            0
        """
        logger.info("running %s on %s", config.subcommand, ", ".join(config.symbol_paths))
        try:
            with ResultSink(config.output, config.format) as sink:
                return self.pipelines[config.subcommand](config, sink)
        except FisherHartwigError as e:
            print(f"ERROR ({type(e).__name__}): {e}", file=sys.stderr)
            return status_for(e)
        except OSError as e:
            print(f"ERROR: cannot write {config.output}: {e}", file=sys.stderr)
            return EXIT_INVALID

    # loading

    def load_single(self, config: RunConfig) -> FhSymbol:
        if len(config.symbol_paths) != 1:
            raise ConfigError(f"{config.subcommand} takes exactly one --symbol")
        return load_symbol(config.symbol_paths[0])

    def series_for(self, sym: FhSymbol, config: RunConfig, workers: int | None = None) -> DeterminantSeries:
        workers = workers or config.workers
        N = config.n_grid[-1]
        table = compute_moments(sym, N, config.tol, workers=workers)
        return logdet_series(table, N, workers=workers)

    # pipelines

    def predict(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        for n in config.n_grid:
            b = predict_logdet(sym, n)
            sink.add({"n": n, "szego_term": b.szego_term, "wh_term": b.wh_term,
                      "power_term": b.power_term, "pair_term": b.pair_term, "g_term": b.g_term,
                      "total": b.total, "error_exponent": b.error_exponent, "valid": b.valid})
        return EXIT_OK

    def exact(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        series = self.series_for(sym, config)
        for n in config.n_grid:
            if n > series.n_max:
                sink.add(_breakdown_row(series.breakdown_at, ("logdet", "chi_sq")))
                return EXIT_BREAKDOWN
            sink.add({"n": n, "logdet": series.log_d(n), "chi_sq": complex(series.chi_sq[n - 1]),
                      "method": series.method, "det": series.det(n)})
        return EXIT_OK

    def compare_rows(self, sym: FhSymbol, config: RunConfig, workers: int | None = None) -> tuple[list[dict], bool]:
        """Rows of one compare run and whether the determinant series broke down."""
        series = self.series_for(sym, config, workers)
        rows, observed = [], []
        expected = None
        for n in config.n_grid:
            if n > series.n_max:
                rows.append(_breakdown_row(series.breakdown_at, ("logdet", "pred"), ("abs_ratio_err",)))
                break
            prediction = predict_logdet(sym, n)
            expected = prediction.error_exponent
            err = ratio_error(series.log_d(n), prediction.total)
            observed.append((n, err))
            rows.append({"n": n, "logdet": series.log_d(n), "pred": prediction.total,
                         "abs_ratio_err": err, "method": series.method})

        try:
            slope, _ = error_decay_fit(observed, expected, robust=config.robust_fit)
        except InsufficientData as e:
            logger.warning("no decay fit: %s", e)
            slope = math.nan
        for row in rows:
            row["fit_slope"] = slope
            row["expected_slope"] = expected if expected is not None else math.nan
        return rows, series.breakdown_at is not None and series.n_max < config.n_grid[-1]

    def compare(self, config: RunConfig, sink: ResultSink) -> int:
        rows, broke = self.compare_rows(self.load_single(config), config)
        sink.extend(rows)
        return EXIT_BREAKDOWN if broke else EXIT_OK

    def sweep(self, config: RunConfig, sink: ResultSink) -> int:
        symbols = [load_symbol(p) for p in config.symbol_paths]

        def one(sym: FhSymbol):
            return self.compare_rows(sym, config, workers=1)

        if config.workers > 1 and len(symbols) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(one, symbols))
        else:
            results = [one(s) for s in symbols]

        broke = False
        for path, (rows, symbol_broke) in zip(config.symbol_paths, results):
            broke = broke or symbol_broke
            sink.extend({"symbol": Path(path).stem, **row} for row in rows)
        return EXIT_BREAKDOWN if broke else EXIT_OK

    def verify_ab(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        for n in config.n_grid:
            report = verify_identity_alpha_beta(sym, n, config.nu, config.gamma_kind, config.fd_step,
                                                tol=config.tol, workers=config.workers)
            sink.add(self._report_row(n, report))
        return EXIT_OK

    def verify_t(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        for n in config.n_grid:
            report = verify_identity_t(sym, n, config.t, config.fd_step, tol=config.tol,
                                       workers=config.workers)
            sink.add(self._report_row(n, report))
        return EXIT_OK

    @staticmethod
    def _report_row(n: int, report) -> dict:
        params = {k: v for k, v in report.params.items() if k not in ("symbol", "n")}
        return {"n": n, "lhs": report.lhs, "rhs": report.rhs, "abs_err": report.abs_err,
                "rel_err": report.rel_err, "fd_step": report.fd_step, "quad_tol": report.quad_tol,
                **params}

    def heine(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        series = self.series_for(sym, config)
        for n in config.n_grid:
            if n > series.n_max:
                sink.add(_breakdown_row(series.breakdown_at, ("heine", "logdet"), ("rel_diff",)))
                return EXIT_BREAKDOWN
            value = heine_direct(sym, n, config.tol)
            det = series.det(n)
            sink.add({"n": n, "heine": value, "logdet": series.log_d(n),
                      "rel_diff": abs(value - det) / abs(det)})
        return EXIT_OK

    def chi(self, config: RunConfig, sink: ResultSink) -> int:
        sym = self.load_single(config)
        series = self.series_for(sym, config)
        for n in config.n_grid:
            if n > series.n_max:
                sink.add(_breakdown_row(series.breakdown_at, ("chi_sq", "chi_asym"), ("residual",)))
                return EXIT_BREAKDOWN
            exact = complex(series.chi_sq[n - 1])
            asym = chi_asymptotic(sym, n)
            sink.add({"n": n, "chi_sq": exact, "chi_asym": asym.total,
                      "residual": abs(exact - asym.total)})
        return EXIT_OK
