"""
Fourier coefficients f_j = (1/2pi) int_0^{2pi} f(e^{i theta}) e^{-i j theta} d(theta).

All coefficients of one table share a single circle rule: the weighted symbol
values are computed once and the Fourier sums run over chunks of j, possibly on
a thread pool. Chunks are fixed in size and reassembled in index order, so a
table never depends on the number of workers.

The error estimate per coefficient compares the rule against a companion rule
with half the panels and twice the tanh-sinh step, and adds the size of the
integrand at the tanh-sinh truncation points.
"""

from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
import logging
import math

import numpy as np

from fh_structs import FhSymbol, MomentTable, TWO_PI
from fh_structs.fh_errors import PreconditionViolated, ToleranceNotMet
from .circle_rule import CircleRule, build_circle_rule, DE_STEP

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MIN_TOL = 1e-14
MIN_PANELS = 16
J_CHUNK = 16

LogWeight = Callable[[CircleRule], np.ndarray]


def default_panels(n_max: int) -> int:
    """Gauss panels per arc resolving e^{-i j theta} for |j| <= n_max."""
    return max(MIN_PANELS, 4 * n_max)


def _weighted_values(sym: FhSymbol, rule: CircleRule, log_weight: LogWeight | None) -> np.ndarray:
    logf = log_weight(rule) if log_weight is not None else rule.log_of(sym)
    return rule.weights * np.exp(logf) / TWO_PI


def fourier_sums(theta: np.ndarray, wf: np.ndarray, js: np.ndarray, workers: int = 1) -> np.ndarray:
    """
    sum_k wf_k e^{-i j theta_k} for every j in js.

    Args:
        theta (np.ndarray): Node angles
        wf (np.ndarray): Weighted integrand values
        js (np.ndarray): Integer frequencies
        workers (int): Thread-pool width

    Returns:
        np.ndarray: One complex sum per frequency, in the order of js
    """
    js = np.asarray(js)
    chunks = [js[i:i + J_CHUNK] for i in range(0, js.size, J_CHUNK)]

    def one_chunk(chunk: np.ndarray) -> np.ndarray:
        return np.exp(-1j * np.outer(chunk, theta)) @ wf

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_chunk, chunks))
    else:
        parts = [one_chunk(c) for c in chunks]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)


def compute_moments(sym: FhSymbol, n_max: int, tol: float = DEFAULT_TOL, *,
                    panels: int | None = None, log_weight: LogWeight | None = None,
                    cluster: np.ndarray | None = None, workers: int = 1,
                    strict: bool = False) -> MomentTable:
    """
    Fourier coefficients f_{-n_max}..f_{n_max} of a symbol.

    Args:
        sym (FhSymbol): Validated symbol; its singular angles cut the circle
        n_max (int): Largest |j|
        tol (float): Absolute tolerance per coefficient, at least 1e-14
        panels (int, optional): Panels per arc, defaults to max(16, 4 * n_max)
        log_weight (callable, optional): ln of the weight on a rule's nodes, for weights
            sharing sym's singular structure (a deformed symbol); defaults to ln f
        cluster (np.ndarray, optional): Per singularity, whether its end panels are clustered;
            defaults to alpha_j != 0
        workers (int): Thread-pool width for the Fourier sums
        strict (bool): Raise instead of flagging a degraded table

    Returns:
        MomentTable: Coefficients with per-coefficient error estimates

    Raises:
        PreconditionViolated: tol below 1e-14 or negative n_max
        ToleranceNotMet: strict is set and some estimate exceeds tol

    Example:
        >>> table = compute_moments(alpha_one_symbol, 4)
        >>> round(table.coeff(0).real, 12), round(table.coeff(1).real, 12)
        (2.0, -1.0)
    """
    if tol < MIN_TOL:
        raise PreconditionViolated(f"tol {tol:g} is below {MIN_TOL:g}")
    if n_max < 0:
        raise PreconditionViolated("n_max must be non-negative")
    panels = panels or default_panels(n_max)

    fine = build_circle_rule(sym, panels, cluster=cluster)
    coarse = build_circle_rule(sym, max(1, panels // 2), step=2.0 * DE_STEP, cluster=cluster)
    wf_fine = _weighted_values(sym, fine, log_weight)
    wf_coarse = _weighted_values(sym, coarse, log_weight)

    js = np.arange(-n_max, n_max + 1)
    coeffs = fourier_sums(fine.theta, wf_fine, js, workers)
    rough = fourier_sums(coarse.theta, wf_coarse, js, workers)
    tail = float(np.sum(np.abs(wf_fine[fine.tail])))
    err_est = np.abs(coeffs - rough) + tail

    worst = float(np.max(err_est))
    degraded = worst > tol
    if degraded:
        logger.warning("moment table degraded: worst error estimate %.3e > tol %.1e (%d panels)",
                       worst, tol, panels)
        if strict:
            raise ToleranceNotMet(f"moment error estimate {worst:.3e} exceeds tol {tol:.1e}", worst)
    logger.info("computed %d moments on %d nodes, worst estimate %.2e", js.size, fine.size, worst)
    return MomentTable(n_max=n_max, coeffs=coeffs, err_est=err_est, tol=tol, panels=panels,
                       degraded=degraded, cluster=None if cluster is None else tuple(bool(c) for c in cluster))


def moment_error_probe(sym: FhSymbol, table: MomentTable, *, fraction: float = 0.1, seed: int = 0,
                       log_weight: LogWeight | None = None) -> float:
    """
    Recompute a random sample of coefficients with doubled panel counts.

    Args:
        sym (FhSymbol): The symbol the table was computed for
        table (MomentTable): Table under test
        fraction (float): Share of coefficients to recompute
        seed (int): Seed of the sample
        log_weight (callable, optional): As in compute_moments

    Returns:
        float: Largest discrepancy between table and recomputation
    """
    js_all = np.arange(-table.n_max, table.n_max + 1)
    count = max(1, math.ceil(fraction * js_all.size))
    js = np.sort(np.random.default_rng(seed).choice(js_all, size=count, replace=False))

    # same endpoint clustering as the table, only finer
    cluster = None if table.cluster is None else np.array(table.cluster)
    rule = build_circle_rule(sym, 2 * (table.panels or default_panels(table.n_max)), cluster=cluster)
    refined = fourier_sums(rule.theta, _weighted_values(sym, rule, log_weight), js)
    discrepancy = float(np.max(np.abs(refined - table.coeffs[js + table.n_max])))
    logger.debug("spot check of %d coefficients: max discrepancy %.3e", count, discrepancy)
    return discrepancy


def mean_square(sym: FhSymbol, panels: int = MIN_PANELS) -> float:
    """(1/2pi) int |f|^2 d(theta), the Parseval bound for sum_j |f_j|^2."""
    rule = build_circle_rule(sym, panels)
    return float(np.dot(rule.weights, np.exp(2.0 * rule.log_of(sym).real)) / TWO_PI)


def moment_rows(table: MomentTable) -> Iterator[dict]:
    """Rows j, re, im, err_est of a table dump, ordered by j."""
    for j in range(-table.n_max, table.n_max + 1):
        c = table.coeff(j)
        yield {"j": j, "re": c.real, "im": c.imag, "err_est": table.error(j)}
