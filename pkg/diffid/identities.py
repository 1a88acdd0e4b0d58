"""
Numerical checks of two exact differential identities for ln D_n.

verify_identity_alpha_beta differentiates in one alpha_k or beta_k of a symbol with
V = 0; the right-hand side is built from phi_n, hat-phi_n at the singular points,
the Cauchy transforms tilde-Y_12, tilde-Y_22 at root singularities and the jump of
f at jump-only points.

verify_identity_t differentiates along f(z, t) = (1 - t + t e^V) e^{-V} f(z); the
right-hand side is a contour integral of the first column of Y against d f / d t.

Every parameter derivative, on both sides, is a central finite difference with a
common step, so the check never uses the identity it is testing.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
import math

import numpy as np

from fh_structs import FhSymbol, IdentityReport, MomentTable, OrthoPolyPair, TWO_PI
from fh_structs.fh_errors import (
    DeformationVanishes, MinorBreakdown, PreconditionViolated, RegularizationRequired,
)
from determinant import logdet_series
from fh_symbol import jump_delta_f, smooth_part, symbol_to_dict
from moments import CircleRule, build_circle_rule, compute_moments, default_panels, DEFAULT_TOL
from .ortho import ortho_pair, y_first_column, y_tilde_at_singularity

logger = logging.getLogger(__name__)

DEFORMATION_FLOOR = 1e-10


def _log_difference(a: complex, b: complex) -> complex:
    """a - b for two logs, imaginary part reduced to (-pi, pi]."""
    d = complex(a) - complex(b)
    return complex(d.real, math.remainder(d.imag, TWO_PI))


@dataclass(frozen=True)
class DeformedSymbol:
    """
    f(z, t) = (1 - t + t e^{V(z)}) e^{-V(z)} f(z).

    Shares the singular structure of base; t = 0 drops V, t = 1 gives base back.
    """
    base: FhSymbol
    t: float

    def factor_on_rule(self, rule: CircleRule) -> np.ndarray:
        return 1.0 - self.t + self.t * np.exp(smooth_part(self.base, rule.theta))

    def log_on_rule(self, rule: CircleRule) -> np.ndarray:
        v = smooth_part(self.base, rule.theta)
        return rule.log_of(self.base) - v + np.log(self.factor_on_rule(rule))

    def dt_on_rule(self, rule: CircleRule) -> np.ndarray:
        """d f(z, t) / dt = (1 - e^{-V}) f(z), independent of t."""
        v = smooth_part(self.base, rule.theta)
        return -np.expm1(-v) * np.exp(rule.log_of(self.base))

    def check(self, rule: CircleRule) -> None:
        smallest = float(np.min(np.abs(self.factor_on_rule(rule))))
        if smallest < DEFORMATION_FLOOR:
            raise DeformationVanishes(f"1 - t + t e^V vanishes on the circle at t = {self.t:g} "
                                      f"(min modulus {smallest:.2e})")


def _series_through(table: MomentTable, n: int, workers: int):
    series = logdet_series(table, n, workers=workers)
    if series.n_max < n:
        raise MinorBreakdown(f"D_{series.breakdown_at} vanishes before n = {n}", series.breakdown_at)
    return series


def _in_parallel(workers: int, *calls):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(calls))) as pool:
            return [f.result() for f in [pool.submit(c) for c in calls]]
    return [c() for c in calls]


# identity in alpha_k / beta_k

def _check_ab_preconditions(sym: FhSymbol, n: int, nu: int, gamma_kind: str) -> None:
    if sym.has_smooth_part:
        raise PreconditionViolated("the alpha/beta identity is stated for V = 0")
    if n < 1:
        raise PreconditionViolated(f"need n >= 1, got {n}")
    if not 0 <= nu <= sym.m:
        raise PreconditionViolated(f"singularity index {nu} out of range 0..{sym.m}")
    if gamma_kind not in ("alpha", "beta"):
        raise PreconditionViolated("gamma_kind must be 'alpha' or 'beta'")
    for j, s in enumerate(sym.singularities):
        if s.alpha != 0 and complex(s.alpha).real <= 0:
            raise RegularizationRequired(f"singularity {j} has Re(alpha) = {complex(s.alpha).real:g} <= 0")


def _perturbed(sym: FhSymbol, nu: int, gamma_kind: str, delta: float) -> FhSymbol:
    s = sym.singularities[nu]
    if gamma_kind == "alpha":
        return sym.with_singularity(nu, alpha=complex(s.alpha) + delta)
    return sym.with_singularity(nu, beta=complex(s.beta) + delta)


def verify_identity_alpha_beta(sym: FhSymbol, n: int, nu: int, gamma_kind: str = "alpha",
                               fd_step: float = 1e-4, *, tol: float = DEFAULT_TOL,
                               workers: int = 1) -> IdentityReport:
    """
    Compare d ln D_n / d gamma with its expression through orthogonal polynomial data,
    gamma = alpha_nu or beta_nu.

    Args:
        sym (FhSymbol): Validated symbol, V = 0, every singularity with Re(alpha_j) > 0
            or alpha_j = 0
        n (int): Order, n >= 1
        nu (int): Index of the differentiated singularity
        gamma_kind (str): "alpha" or "beta"
        fd_step (float): Central difference step
        tol (float): Moment tolerance
        workers (int): Thread-pool width

    Returns:
        IdentityReport: Both sides and their discrepancy

    Raises:
        PreconditionViolated: V != 0, bad indices, or a root singularity with Re(alpha) <= 0
        MinorBreakdown: Some D_k, k <= n + 1, vanishes at one of the evaluation points
    """
    _check_ab_preconditions(sym, n, nu, gamma_kind)
    h = fd_step
    cluster = sym.alphas != 0
    if gamma_kind == "alpha":
        cluster[nu] = True

    def state(variant: FhSymbol, chi_ref: complex | None = None):
        table = compute_moments(variant, n + 1, tol, cluster=cluster, workers=workers)
        series = _series_through(table, n + 1, workers)
        return series, ortho_pair(table, n, series=series, chi_ref=chi_ref)

    series0, pair0 = state(sym)
    (series_p, pair_p), (series_m, pair_m) = _in_parallel(
        workers,
        lambda: state(_perturbed(sym, nu, gamma_kind, h), pair0.chi),
        lambda: state(_perturbed(sym, nu, gamma_kind, -h), pair0.chi),
    )

    def d_log_d(k: int) -> complex:
        return _log_difference(series_p.log_d(k), series_m.log_d(k)) / (2.0 * h)

    lhs = d_log_d(n)
    d_log_chi = 0.5 * (d_log_d(n) - d_log_d(n + 1))
    rhs = -2.0 * d_log_chi * (n + complex(np.sum(sym.alphas)))
    rhs += sum((_singular_point_term(sym, j, pair0, pair_p, pair_m, h)
                for j in range(len(sym.singularities))), 0j)

    logger.info("alpha/beta identity, n = %d, d/d%s_%d: lhs = %s, rhs = %s", n, gamma_kind, nu, lhs, rhs)
    params = {"symbol": symbol_to_dict(sym), "n": n, "nu": nu, "gamma": gamma_kind}
    return IdentityReport.from_sides(lhs, rhs, fd_step=h, quad_tol=tol, params=params)


def _singular_point_term(sym: FhSymbol, j: int, pair0: OrthoPolyPair, pair_p: OrthoPolyPair,
                         pair_m: OrthoPolyPair, h: float) -> complex:
    s = sym.singularities[j]
    n = pair0.n
    z_j = complex(np.exp(1j * s.theta))
    w_j = 1.0 / z_j
    d_phi = (pair_p.phi_at(z_j) - pair_m.phi_at(z_j)) / (2.0 * h)

    if s.alpha != 0:
        y12, y22 = y_tilde_at_singularity(sym, pair0, j)
        # chi_n^{-1} Y_21^{(n+1)}(z) = -z^n hat-phi_n(z^{-1})
        d_y21 = -z_j ** n * (pair_p.phi_hat_at(w_j) - pair_m.phi_hat_at(w_j)) / (2.0 * h)
        return complex(2.0 * s.alpha * (d_phi * z_j * y22 / pair0.chi - d_y21 * pair0.chi * y12))

    delta_f = jump_delta_f(sym, j)
    if delta_f == 0:
        return 0j
    d_phi_hat = (pair_p.phi_hat_at(w_j) - pair_m.phi_hat_at(w_j)) / (2.0 * h)
    return complex((d_phi * pair0.phi_hat_at(w_j) - d_phi_hat * pair0.phi_at(z_j)) * delta_f
                   / (2j * math.pi))


# identity in the deformation parameter t

def verify_identity_t(sym: FhSymbol, n: int, t: float = 1.0, fd_step: float = 1e-4, *,
                      tol: float = DEFAULT_TOL, workers: int = 1) -> IdentityReport:
    """
    Compare d ln D_n(f(., t)) / dt with the contour integral

        (1/2 pi i) int z^{-n} (Y_11 Y_21' - Y_21 Y_11') d f / dt dz.

    Args:
        sym (FhSymbol): Validated symbol; V = 0 makes both sides vanish
        n (int): Order, n >= 1
        t (float): Deformation parameter in (0, 1]
        fd_step (float): Central difference step
        tol (float): Moment tolerance
        workers (int): Thread-pool width

    Returns:
        IdentityReport: Both sides and their discrepancy

    Raises:
        PreconditionViolated: t outside (0, 1] or n < 1
        DeformationVanishes: 1 - t + t e^V comes within 1e-10 of zero on the circle
        MinorBreakdown: Some D_k, k <= n + 1, vanishes
    """
    if not 0.0 < t <= 1.0:
        raise PreconditionViolated(f"t must lie in (0, 1], got {t}")
    if n < 1:
        raise PreconditionViolated(f"need n >= 1, got {n}")
    h = fd_step
    check_rule = build_circle_rule(sym, default_panels(n + 1))

    def table_at(tt: float) -> MomentTable:
        deformed = DeformedSymbol(sym, tt)
        deformed.check(check_rule)
        return compute_moments(sym, n + 1, tol, log_weight=deformed.log_on_rule, workers=workers)

    table_p, table_m, table_0 = _in_parallel(workers, lambda: table_at(t + h), lambda: table_at(t - h),
                                             lambda: table_at(t))
    lhs = _log_difference(_series_through(table_p, n, workers).log_d(n),
                          _series_through(table_m, n, workers).log_d(n)) / (2.0 * h)

    _series_through(table_0, n + 1, workers)
    y11, y21 = y_first_column(table_0, n)
    poly = np.polynomial.polynomial
    z = check_rule.z
    y11_z, y21_z = poly.polyval(z, y11), poly.polyval(z, y21)
    dy11_z, dy21_z = poly.polyval(z, poly.polyder(y11)), poly.polyval(z, poly.polyder(y21))
    # dz / (2 pi i) = z d(theta) / (2 pi)
    integrand = (z ** (1 - n) * (y11_z * dy21_z - y21_z * dy11_z)
                 * DeformedSymbol(sym, t).dt_on_rule(check_rule))
    rhs = check_rule.integrate(integrand) / TWO_PI

    logger.info("t identity, n = %d, t = %g: lhs = %s, rhs = %s", n, t, lhs, rhs)
    params = {"symbol": symbol_to_dict(sym), "n": n, "t": t}
    return IdentityReport.from_sides(lhs, rhs, fd_step=h, quad_tol=tol, params=params)
