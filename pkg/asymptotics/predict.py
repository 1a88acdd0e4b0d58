"""
Large-n Predictions for Toeplitz Determinants with Fisher-Hartwig Symbols

- predict_logdet: ln of the leading-order formula for D_n, split into its factors
- bs_exact_logdet: closed form of D_n for one root/jump singularity and V = 0
- chi_asymptotic: large-n form of chi_{n-1}^2 for V = 0, oscillating terms included
- error_decay_fit: power-law exponent of an observed error sequence

Logs of complex powers follow fixed branches: |z_j - z_k| = 2|sin((theta_j - theta_k)/2)|
is real positive, ln(z_k / (z_j e^{i pi})) = i(theta_k - theta_j - pi) for j < k, and
ln(z_j / z_p) = i(theta_j - theta_p).
"""

from collections.abc import Sequence
import logging
import math

import numpy as np
import scipy.special
import scipy.stats

from fh_structs import AsymptoticBreakdown, ChiAsymptotic, FhSymbol
from fh_structs.fh_errors import (
    DegenerateParameters, InsufficientData, OutOfValidity, PreconditionViolated,
)
from fh_symbol import seminorm, wiener_hopf_log_at
from specfun import ln_barnes_g, ln_barnes_g_ratio_run

logger = logging.getLogger(__name__)

DEGENERACY_ATOL = 1e-10
MIN_FIT_POINTS = 4


def _near_negative_integer(w: complex) -> bool:
    r = round(w.real)
    return r <= -1 and abs(w - r) < DEGENERACY_ATOL


def is_degenerate(alpha: complex, beta: complex) -> bool:
    """alpha + beta or alpha - beta is (within 1e-10 of) a negative integer."""
    return _near_negative_integer(complex(alpha + beta)) or _near_negative_integer(complex(alpha - beta))


def _log_chord(theta_j: float, theta_k: float) -> float:
    return math.log(abs(2.0 * math.sin(0.5 * (theta_j - theta_k))))


def szego_term(sym: FhSymbol, n: int) -> complex:
    """n V_0 + sum_{k >= 1} k V_k V_{-k}."""
    return n * sym.v_coeff(0) + sum((k * sym.v_coeff(k) * sym.v_coeff(-k)
                                     for k in range(1, sym.degree + 1)), 0j)


def pair_term(sym: FhSymbol) -> complex:
    """ln of the double product over singularity pairs j < k (0 when m = 0)."""
    total = 0j
    sings = sym.singularities
    for j in range(len(sings)):
        for k in range(j + 1, len(sings)):
            sj, sk = sings[j], sings[k]
            total += 2.0 * (sj.beta * sk.beta - sj.alpha * sk.alpha) * _log_chord(sj.theta, sk.theta)
            total += (sj.alpha * sk.beta - sk.alpha * sj.beta) * 1j * (sk.theta - sj.theta - math.pi)
    return complex(total)


def predict_logdet(sym: FhSymbol, n: int, *, strict: bool = False) -> AsymptoticBreakdown:
    """
    ln of the leading-order large-n formula for D_n, factor by factor.

    Args:
        sym (FhSymbol): Validated symbol
        n (int): Order, n >= 1
        strict (bool): Raise OutOfValidity instead of flagging the result

    Returns:
        AsymptoticBreakdown: The five additive terms, their sum, the error exponent
        |||beta||| - 1 and the validity flag

    Raises:
        PreconditionViolated: n < 1
        OutOfValidity: strict is set and |||beta||| >= 1 or some alpha_j +- beta_j is a
            negative integer

    Example:
        >>> predict_logdet(alpha_one_symbol, 100).total   # ln 100
        (4.605170185988092+0j)
    """
    if n < 1:
        raise PreconditionViolated(f"predictions need n >= 1, got {n}")

    wh, power_sum, g = 0j, 0j, 0j
    degenerate = False
    for j, s in enumerate(sym.singularities):
        alpha, beta = complex(s.alpha), complex(s.beta)
        ln_b_plus, ln_b_minus = wiener_hopf_log_at(sym, j)
        wh += (-alpha + beta) * ln_b_plus + (-alpha - beta) * ln_b_minus
        power_sum += alpha * alpha - beta * beta
        if s.is_trivial:
            continue
        degenerate = degenerate or is_degenerate(alpha, beta)
        g += (ln_barnes_g(1.0 + alpha + beta).value + ln_barnes_g(1.0 + alpha - beta).value
              - ln_barnes_g(1.0 + 2.0 * alpha).value)

    norm = seminorm(sym)
    valid = norm < 1.0 and not degenerate
    result = AsymptoticBreakdown.from_terms(
        n=n, szego_term=szego_term(sym, n), wh_term=wh, power_term=math.log(n) * power_sum,
        pair_term=pair_term(sym), g_term=g, error_exponent=norm - 1.0, valid=valid,
    )
    if not valid:
        logger.warning("prediction at n = %d outside validity (|||beta||| = %.3g, degenerate = %s)",
                       n, norm, degenerate)
        if strict:
            raise OutOfValidity(f"|||beta||| = {norm:.3g}, degenerate = {degenerate}")
    return result


def bs_exact_logdet(alpha: complex, beta: complex, n: int) -> complex:
    """
    Exact ln D_n for a single singularity at z_0 = 1 and V = 0.

    D_n = G(1+a+b) G(1+a-b) / G(1+2a) * G(n+1) G(n+1+2a) / (G(n+1+a+b) G(n+1+a-b)).
    The constant G(1 + .) factors cancel against the tails of the n-dependent ones,
    which leaves four runs of log-Gamma values.

    Args:
        alpha (complex): Root exponent, Re(alpha) > -1/2
        beta (complex): Jump exponent
        n (int): Order, n >= 1

    Returns:
        complex: ln D_n

    Raises:
        DegenerateParameters: alpha +- beta is a negative integer
        PreconditionViolated: Re(alpha) <= -1/2 or n < 1
    """
    alpha, beta = complex(alpha), complex(beta)
    if alpha.real <= -0.5 or n < 1:
        raise PreconditionViolated(f"need Re(alpha) > -1/2 and n >= 1 (alpha = {alpha}, n = {n})")
    if (is_degenerate(alpha, beta) or ln_barnes_g(1.0 + alpha + beta).is_zero
            or ln_barnes_g(1.0 + alpha - beta).is_zero):
        raise DegenerateParameters(f"alpha +- beta is a negative integer (alpha = {alpha}, beta = {beta})")
    return (ln_barnes_g_ratio_run(0.0, n) + ln_barnes_g_ratio_run(2.0 * alpha, n)
            - ln_barnes_g_ratio_run(alpha + beta, n) - ln_barnes_g_ratio_run(alpha - beta, n))


def ln_nu(sym: FhSymbol, j: int) -> complex:
    """
    ln nu_j = -i pi (sum_{p<j} alpha_p - sum_{p>j} alpha_p)
              + sum_{p != j} [alpha_p i(theta_j - theta_p) + 2 beta_p ln|z_j - z_p|].
    """
    sings = sym.singularities
    theta_j = sings[j].theta
    before = sum((complex(s.alpha) for s in sings[:j]), 0j)
    after = sum((complex(s.alpha) for s in sings[j + 1:]), 0j)
    value = -1j * math.pi * (before - after)
    for p, s in enumerate(sings):
        if p == j:
            continue
        value += complex(s.alpha) * 1j * (theta_j - s.theta)
        if s.beta != 0:
            value += 2.0 * complex(s.beta) * _log_chord(theta_j, s.theta)
    return value


def chi_asymptotic(sym: FhSymbol, n: int) -> ChiAsymptotic:
    """
    Large-n form of chi_{n-1}^2 = D_{n-1} / D_n for V = 0.

    Args:
        sym (FhSymbol): Validated symbol without smooth part
        n (int): Order, n >= 1

    Returns:
        ChiAsymptotic: leading 1 - (1/n) sum (alpha_k^2 - beta_k^2), the oscillating
        pair sum, and their total

    Raises:
        PreconditionViolated: V is not identically zero, or n < 1
        OutOfValidity: |||beta||| >= 1 or degenerate parameters
    """
    if sym.has_smooth_part:
        raise PreconditionViolated("the chi asymptotics are only available for V = 0")
    if n < 1:
        raise PreconditionViolated(f"need n >= 1, got {n}")
    norm = seminorm(sym)
    if norm >= 1.0 or any(is_degenerate(s.alpha, s.beta) for s in sym.singularities):
        raise OutOfValidity(f"chi asymptotics need |||beta||| < 1 and non-degenerate parameters "
                            f"(|||beta||| = {norm:.3g})")

    alphas, betas, thetas = sym.alphas, sym.betas, sym.thetas
    leading = 1.0 - complex(np.sum(alphas ** 2 - betas ** 2)) / n

    count = len(sym.singularities)
    log_nu = [ln_nu(sym, j) for j in range(count)]
    z = np.exp(1j * thetas)
    log_n = math.log(n)
    oscillatory = 0j
    for j in range(count):
        for k in range(count):
            if k == j:
                continue
            weight = (scipy.special.gamma(1.0 + alphas[j] + betas[j]) * scipy.special.gamma(1.0 + alphas[k] - betas[k])
                      * scipy.special.rgamma(alphas[j] - betas[j]) * scipy.special.rgamma(alphas[k] + betas[k]))
            if weight == 0:
                continue
            phase = np.exp(1j * n * (thetas[j] - thetas[k]) + 2.0 * (betas[k] - betas[j] - 1.0) * log_n
                           + log_nu[j] - log_nu[k])
            oscillatory += complex(z[k] / (z[j] - z[k]) * phase * weight)
    return ChiAsymptotic(n=n, leading=leading, oscillatory=oscillatory, total=leading + oscillatory)


def ratio_error(logdet: complex, predicted: complex) -> float:
    """|D_n / prediction - 1|, computed in log form."""
    return abs(np.expm1(complex(logdet) - complex(predicted)))


def error_decay_fit(observed: Sequence[tuple[int, float]], expected_slope: float | None = None, *,
                    robust: bool = False) -> tuple[float, float]:
    """
    Fit ln(err) = slope * ln(n) + intercept.

    Args:
        observed (Sequence[tuple[int, float]]): Pairs (n, err) with err > 0
        expected_slope (float, optional): Reference exponent, only logged
        robust (bool): Median of pairwise slopes instead of least squares

    Returns:
        tuple[float, float]: (slope, intercept)

    Raises:
        InsufficientData: Fewer than four points, or a non-positive error

    Example:
        >>> error_decay_fit([(n, 3.0 / n) for n in (16, 32, 64, 128)])[0]
        -1.0
    """
    if len(observed) < MIN_FIT_POINTS:
        raise InsufficientData(f"a decay fit needs at least {MIN_FIT_POINTS} points, got {len(observed)}")
    ns = np.array([n for n, _ in observed], dtype=float)
    errs = np.array([e for _, e in observed], dtype=float)
    if np.any(ns <= 0) or not np.all(errs > 0):
        raise InsufficientData("decay fits need positive orders and positive errors")

    x, y = np.log(ns), np.log(errs)
    if robust:
        slope, intercept = scipy.stats.theilslopes(y, x)[:2]
    else:
        slope, intercept = np.polyfit(x, y, 1)
    slope, intercept = float(slope), float(intercept)
    if expected_slope is not None:
        logger.info("fitted decay slope %.4f against expected %.4f", slope, expected_slope)
    return slope, intercept
