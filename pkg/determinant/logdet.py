"""
Toeplitz Log-Determinant Series

D_n = det(f_{j-k})_{j,k=0..n-1} for n = 1..N, kept in log form. Two independent
routes produce the same series:

- elimination: an LU factorization with partial pivoting of every n x n minor;
  ln D_n is the sum of the pivot logs plus i*pi per row swap
- recursion: the two-sided Szego recursion for the monic polynomials P_n, Q_n
  orthogonal with respect to f from the left and from the right, giving
  h_n = D_{n+1} / D_n in O(n) per step

Branch convention shared by both: ln D_{n+1} = ln D_n + Log(D_{n+1} / D_n) with
the principal Log, starting from ln D_0 = 0.

A (numerically) vanishing minor D_k stops the series at k - 1 and is reported
through breakdown_at; nothing is interpolated across it.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import math

import numpy as np
import scipy.linalg

from fh_structs import DeterminantSeries, FhSymbol, MomentTable, TWO_PI
from fh_structs.fh_errors import (
    PreconditionViolated, RecursionBreakdown, SingularMinor, ToleranceNotMet,
)
from moments import build_circle_rule
from moments.circle_rule import DE_STEP

logger = logging.getLogger(__name__)

PIVOT_RTOL = 1e-13
REFLECTION_LIMIT = 1e8
HEINE_PANELS = 16


def _wrap_imag(w: complex) -> complex:
    """Representative of w modulo 2*pi*i with imaginary part in (-pi, pi]."""
    im = math.remainder(w.imag, TWO_PI)
    if im == -math.pi:
        im = math.pi
    return complex(w.real, im)


def log_minor(table: MomentTable, n: int) -> tuple[complex, float]:
    """
    ln det of the n x n moment matrix from its LU factorization, and the smallest
    pivot magnitude. The imaginary part is only meaningful modulo 2*pi.
    """
    lu, piv = scipy.linalg.lu_factor(table.toeplitz(n), check_finite=False)
    diag = np.diag(lu)
    smallest = float(np.min(np.abs(diag)))
    if smallest == 0.0:
        return complex(-math.inf, 0.0), 0.0
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    return complex(np.sum(np.log(diag.astype(complex)))) + 1j * math.pi * swaps, smallest


def _series_from_logdet(logdet: list[complex], method: str, breakdown_at: int | None) -> DeterminantSeries:
    values = np.array(logdet, dtype=complex)
    previous = np.concatenate(([0j], values[:-1]))
    chi_sq = np.exp(previous - values)
    return DeterminantSeries(n_max=values.size, logdet=values, chi_sq=chi_sq, method=method,
                             breakdown_at=breakdown_at)


def logdet_series_elimination(table: MomentTable, N: int, *, workers: int = 1,
                              strict: bool = False) -> DeterminantSeries:
    """
    ln D_n for n = 1..N by pivoted elimination of every principal minor.

    Args:
        table (MomentTable): Moments with n_max >= N
        N (int): Largest order
        workers (int): Minors factorized concurrently
        strict (bool): Raise SingularMinor instead of truncating the series

    Returns:
        DeterminantSeries: method "elimination"

    Raises:
        PreconditionViolated: N exceeds the table
        SingularMinor: strict is set and some pivot is below 1e-13 times the largest entry
    """
    if not 0 <= N <= table.n_max:
        raise PreconditionViolated(f"N = {N} needs moments up to |j| = {N}, table has {table.n_max}")
    scale = table.max_entry(N) if N else 0.0
    orders = range(1, N + 1)

    if workers > 1 and N > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            minors = list(pool.map(lambda n: log_minor(table, n), orders))
    else:
        minors = [log_minor(table, n) for n in orders]

    logdet, breakdown_at = [], None
    previous_raw, previous = 0j, 0j
    for n, (raw, smallest) in zip(orders, minors):
        if smallest < PIVOT_RTOL * scale or not np.isfinite(raw):
            breakdown_at = n
            break
        previous = previous + _wrap_imag(raw - previous_raw)
        previous_raw = raw
        logdet.append(previous)

    if breakdown_at is not None:
        logger.warning("elimination: minor D_%d vanishes numerically, series stops at n = %d",
                       breakdown_at, breakdown_at - 1)
        if strict:
            raise SingularMinor(f"D_{breakdown_at} is numerically zero", breakdown_at)
    return _series_from_logdet(logdet, "elimination", breakdown_at)


def logdet_series_recursion(table: MomentTable, N: int, *, strict: bool = False) -> DeterminantSeries:
    """
    ln D_n for n = 1..N from the two-sided Szego recursion.

    P_{n+1}(z) = z P_n(z) - a_n z^n Q_n(1/z),  Q_{n+1}(z) = z Q_n(z) - b_n z^n P_n(1/z),
    h_{n+1} = h_n (1 - a_n b_n),  D_{n+1} = h_n D_n,  h_0 = f_0.

    Args:
        table (MomentTable): Moments with n_max >= N
        N (int): Largest order
        strict (bool): Raise RecursionBreakdown instead of truncating the series

    Returns:
        DeterminantSeries: method "recursion"

    Raises:
        PreconditionViolated: N exceeds the table
        RecursionBreakdown: strict is set and a reflection ratio blew up
    """
    if not 0 <= N <= table.n_max:
        raise PreconditionViolated(f"N = {N} needs moments up to |j| = {N}, table has {table.n_max}")
    c = table.n_max
    f = table.coeffs
    scale = table.max_entry(N) if N else 0.0

    p = np.ones(1, dtype=complex)
    q = np.ones(1, dtype=complex)
    h = complex(f[c])
    logdet, breakdown_at = [], None
    current = 0j
    for n in range(N):
        # h = D_{n+1} / D_n
        if not np.isfinite(h) or abs(h) < PIVOT_RTOL * scale:
            breakdown_at = n + 1
            break
        current = current + np.log(h)
        logdet.append(current)
        if n == N - 1:
            break

        # eps_P = sum_s p_s f_{-1-s},  eps_Q = sum_u q_u f_{u+1}
        eps_p = np.dot(p, f[c - 1 - np.arange(n + 1)])
        eps_q = np.dot(q, f[c + 1 + np.arange(n + 1)])
        a, b = eps_p / h, eps_q / h
        if not (np.isfinite(a) and np.isfinite(b)) or max(abs(a), abs(b)) > REFLECTION_LIMIT:
            breakdown_at = n + 2
            break
        p, q = (np.concatenate(([0j], p)) - a * np.concatenate((q[::-1], [0j])),
                np.concatenate(([0j], q)) - b * np.concatenate((p[::-1], [0j])))
        h = h * (1.0 - a * b)

    if breakdown_at is not None:
        logger.warning("recursion: breakdown at D_%d, series stops at n = %d",
                       breakdown_at, breakdown_at - 1)
        if strict:
            raise RecursionBreakdown(f"Szego recursion broke down at D_{breakdown_at}", breakdown_at)
    return _series_from_logdet(logdet, "recursion", breakdown_at)


def _heine_sum(wf: np.ndarray, z: np.ndarray, n: int) -> complex:
    """(1/n!) sum over n-tuples of nodes of prod_{j<k} |z_j - z_k|^2 prod wf."""
    if n == 1:
        return complex(wf.sum())
    gram = np.abs(z[:, None] - z[None, :]) ** 2
    if n == 2:
        return complex(wf @ gram @ wf) / 2.0
    # n == 3: sum_a wf_a * u_a^T gram u_a with u_a[b] = wf_b |z_a - z_b|^2
    u = gram * wf[None, :]
    return complex(np.dot(wf, np.einsum("ab,ab->a", u @ gram, u))) / 6.0


def heine_direct(sym: FhSymbol, n: int, tol: float = 1e-12, *, panels: int = HEINE_PANELS) -> complex:
    """
    D_n from its n-fold integral representation, for n <= 3.

    Args:
        sym (FhSymbol): Validated symbol
        n (int): Order, 1, 2 or 3
        tol (float): Relative tolerance, measured against max(1, |D_n|)
        panels (int): Panels per arc of the one-dimensional rule

    Returns:
        complex: D_n

    Raises:
        PreconditionViolated: n outside {1, 2, 3}
        ToleranceNotMet: The coarse/fine discrepancy exceeds tol * max(1, |D_n|)
    """
    if n not in (1, 2, 3):
        raise PreconditionViolated(f"the Heine integral is only evaluated for n <= 3, got {n}")

    def evaluate_on(rule) -> complex:
        wf = rule.weights * np.exp(rule.log_of(sym)) / TWO_PI
        return _heine_sum(wf, rule.z, n)

    fine = evaluate_on(build_circle_rule(sym, panels))
    coarse = evaluate_on(build_circle_rule(sym, max(1, panels // 2), step=2.0 * DE_STEP))
    err = abs(fine - coarse)
    logger.debug("Heine D_%d = %s, estimate %.2e", n, fine, err)
    if err > tol * max(1.0, abs(fine)):
        raise ToleranceNotMet(f"Heine integral for D_{n}: estimate {err:.2e} above tolerance", err)
    return fine


def logdet_series(table: MomentTable, N: int, *, workers: int = 1) -> DeterminantSeries:
    """The recursion series, or the elimination series when the recursion breaks down."""
    series = logdet_series_recursion(table, N)
    if series.breakdown_at is None:
        return series
    logger.info("recursion broke down at D_%d, falling back to elimination", series.breakdown_at)
    return logdet_series_elimination(table, N, workers=workers)
