"""
Complex log-Gamma and Barnes G-function in log form.

ln G is computed from the Taylor series of ln G(1 + w) about w = 0, with the
argument brought into reach of the series by repeated use of the functional
equation G(z + 1) = Gamma(z) G(z). Arguments with a large imaginary part, which
no integer shift brings close to 1, go through the large-argument expansion
instead.

Branch contract: callers combine these logs additively and only exponentiate at
the end or compare modulo 2*pi*i. Nothing here promises a particular multiple of
2*pi*i beyond continuity of ln Gamma on the cut plane.
"""

from functools import lru_cache
import logging
import math

import numpy as np
import scipy.special

from fh_structs import LogGammaValue, LogBarnesGValue
from fh_structs.fh_errors import PoleError

logger = logging.getLogger(__name__)

LOG_TWO_PI = math.log(2.0 * math.pi)
ZETA_PRIME_AT_MINUS_ONE = -0.16542114370045092

TAYLOR_TERMS = 400          # enough for |w| < TAYLOR_REACH at double precision
TAYLOR_REACH = 0.9
ASYMPTOTIC_START = 20.0     # Re of the shifted argument for the large-|z| expansion
ASYMPTOTIC_TERMS = 12


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _fsum_complex(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def ln_gamma(z) -> LogGammaValue:
    """
    Principal branch of ln Gamma(z), continuous on the plane cut along (-inf, 0].

    Args:
        z (complex): Argument, not a non-positive integer

    Returns:
        LogGammaValue: Wrapped log-Gamma value

    Raises:
        PoleError: If z is 0, -1, -2, ...
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    return LogGammaValue(value=complex(scipy.special.loggamma(z)))


def _loggamma_run(start: complex, count: int) -> complex:
    """sum_{k=0}^{count-1} ln Gamma(start + k)."""
    if count <= 0:
        return 0j
    args = start + np.arange(count, dtype=float)
    return _fsum_complex(scipy.special.loggamma(args))


@lru_cache(maxsize=1)
def _taylor_coefficients() -> np.ndarray:
    """Ascending coefficients of ln G(1 + w) = sum_p c_p w^p."""
    coeffs = np.zeros(TAYLOR_TERMS + 2)
    coeffs[1] = 0.5 * (LOG_TWO_PI - 1.0)
    coeffs[2] = -0.5 * (1.0 + np.euler_gamma)
    p = np.arange(3, TAYLOR_TERMS + 2)
    coeffs[3:] = (-1.0) ** (p - 1) * scipy.special.zeta(p - 1) / p
    return coeffs


@lru_cache(maxsize=1)
def _asymptotic_coefficients() -> np.ndarray:
    """B_{2k+2} / (4k(k+1)) for k = 1..ASYMPTOTIC_TERMS."""
    bern = scipy.special.bernoulli(2 * ASYMPTOTIC_TERMS + 2)
    k = np.arange(1, ASYMPTOTIC_TERMS + 1)
    return bern[2 * k + 2] / (4.0 * k * (k + 1))


def _ln_g_one_plus_taylor(w: complex) -> complex:
    return complex(np.polynomial.polynomial.polyval(w, _taylor_coefficients()))


def _ln_g_one_plus_asymptotic(u: complex) -> complex:
    log_u = np.log(u)
    inv_sq = 1.0 / (u * u)
    tail = np.polynomial.polynomial.polyval(inv_sq, np.concatenate(([0.0], _asymptotic_coefficients())))
    return complex((0.5 * u * u - 1.0 / 12.0) * log_u - 0.75 * u * u + 0.5 * u * LOG_TWO_PI
                   + ZETA_PRIME_AT_MINUS_ONE + tail)


def ln_barnes_g(z) -> LogBarnesGValue:
    """
    A branch of ln G(z) for Barnes' G-function.

    Zeros of G at z = 0, -1, -2, ... are reported through is_zero rather than
    raised, so degenerate parameter sets can be detected by the caller.

    Args:
        z (complex): Argument

    Returns:
        LogBarnesGValue: value = ln G(z), or -inf with is_zero set

    Example:
        >>> ln_barnes_g(5).value   # G(5) = 1! 2! 3! = 12
        (2.4849066497880004+0j)
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        return LogBarnesGValue(value=complex(-math.inf, 0.0), is_zero=True)

    shift = round(z.real - 1.0)
    w = z - 1.0 - shift
    if abs(w) < TAYLOR_REACH:
        base = _ln_g_one_plus_taylor(w)
        if shift >= 0:
            # G(1+w+N) = G(1+w) * prod_{k<N} Gamma(1+w+k)
            value = base + _loggamma_run(1.0 + w, shift)
        else:
            value = base - _loggamma_run(1.0 + w + shift, -shift)
        logger.debug("ln G(%s): Taylor path, %d shifts", z, abs(shift))
        return LogBarnesGValue(value=value)

    lift = max(0, math.ceil(ASYMPTOTIC_START - (z.real - 1.0)))
    value = _ln_g_one_plus_asymptotic(z - 1.0 + lift) - _loggamma_run(z, lift)
    logger.debug("ln G(%s): large-argument path, lifted by %d", z, lift)
    return LogBarnesGValue(value=value)


def ln_barnes_g_ratio_run(a: complex, n: int) -> complex:
    """
    ln G(n + 1 + a) - ln G(1 + a) = sum_{k=0}^{n-1} ln Gamma(1 + a + k).

    Evaluated term by term so that differences of such runs keep their accuracy
    for large n.
    """
    return _loggamma_run(1.0 + complex(a), n)
