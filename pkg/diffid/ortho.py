"""
Orthogonal Polynomials and the Riemann-Hilbert Matrix Y

For a weight f with D_n, D_{n+1} != 0 the polynomials

    phi_n(z) = chi_n z^n + ...,    hat-phi_n(w) = chi_n w^n + ...

satisfy (1/2pi) int phi_n(z) z^{-j} f d(theta) = chi_n^{-1} delta_{jn} and
(1/2pi) int hat-phi_n(z^{-1}) z^j f d(theta) = chi_n^{-1} delta_{jn}, j = 0..n. In
matrix form T u = e_n and T^T v = e_n with T = (f_{j-k}) of size n + 1, where
u = chi_n phi_n and v = chi_n hat-phi_n.

The first column of Y^{(n)} is the monic polynomial chi_n^{-1} phi_n and
-chi_{n-1} z^{n-1} hat-phi_{n-1}(z^{-1}); neither needs a square root. The second
column holds Cauchy transforms of the first column against f d(xi) / xi^n.
"""

import logging

import numpy as np
import scipy.linalg

from fh_structs import DeterminantSeries, FhSymbol, MomentTable, OrthoPolyPair, TWO_PI
from fh_structs.fh_errors import (
    MinorBreakdown, PreconditionViolated, RegularizationRequired, ToleranceNotMet,
)
from determinant import logdet_series
from moments import build_circle_rule, default_panels
from moments.circle_rule import DE_STEP

logger = logging.getLogger(__name__)

CAUCHY_TOL = 1e-9
SIDES = ("inside", "outside")

polyval = np.polynomial.polynomial.polyval


def _toeplitz_solve(table: MomentTable, size: int, transposed: bool = False) -> np.ndarray:
    """Solve (f_{j-k}) x = e_{size-1} (or the transposed system) of the given size."""
    c = table.n_max
    column = table.coeffs[c:c + size]
    row = table.coeffs[c - size + 1:c + 1][::-1]
    if transposed:
        column, row = row, column
    rhs = np.zeros(size, dtype=complex)
    rhs[-1] = 1.0
    try:
        x = scipy.linalg.solve_toeplitz((column, row), rhs, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise MinorBreakdown(f"Toeplitz system of size {size}: {e}", size) from e
    if not np.all(np.isfinite(x)):
        raise MinorBreakdown(f"Toeplitz system of size {size} is singular", size)
    return x


def ortho_pair(table: MomentTable, n: int, series: DeterminantSeries | None = None,
               chi_ref: complex | None = None) -> OrthoPolyPair:
    """
    phi_n and hat-phi_n for the weight behind a moment table.

    Args:
        table (MomentTable): Moments with n_max >= n
        n (int): Degree
        series (DeterminantSeries, optional): ln D_k up to k = n + 1, fixing the branch
            of chi_n = exp((ln D_n - ln D_{n+1}) / 2); computed when omitted
        chi_ref (complex, optional): chi_n is replaced by -chi_n when that lies closer
            to chi_ref, keeping chi continuous along a parameter path

    Returns:
        OrthoPolyPair: Coefficients in ascending powers and chi_n

    Raises:
        MinorBreakdown: D_n or D_{n+1} vanishes numerically

    Example:
        >>> ortho_pair(compute_moments(alpha_one_symbol, 2), 1).chi   # sqrt(2/3)
        (0.816496580927726+0j)
    """
    if not 0 <= n <= table.n_max:
        raise PreconditionViolated(f"degree {n} needs moments up to |j| = {n}")
    if series is None:
        series = logdet_series(table, n + 1)
    if series.n_max < n + 1:
        raise MinorBreakdown(f"D_{series.breakdown_at} vanishes, phi_{n} is not defined",
                             series.breakdown_at)

    chi = complex(np.exp(0.5 * (series.log_d(n) - series.log_d(n + 1))))
    if chi_ref is not None and abs(chi + chi_ref) < abs(chi - chi_ref):
        chi = -chi
    u = _toeplitz_solve(table, n + 1)
    v = _toeplitz_solve(table, n + 1, transposed=True)
    return OrthoPolyPair(n=n, phi=u / chi, phi_hat=v / chi, chi=chi)


def y_first_column(table: MomentTable, n: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Ascending coefficients of Y_11^{(n)} = chi_n^{-1} phi_n (monic, degree n) and of
    Y_21^{(n)} = -chi_{n-1} z^{n-1} hat-phi_{n-1}(z^{-1}) (degree n - 1; zero for n = 0).
    """
    u = _toeplitz_solve(table, n + 1)
    if u[n] == 0:
        raise MinorBreakdown(f"D_{n} vanishes", n)
    y11 = u / u[n]
    if n == 0:
        return y11, np.zeros(1, dtype=complex)
    v = _toeplitz_solve(table, n, transposed=True)
    return y11, -v[::-1]


def _cauchy_on_rule(sym: FhSymbol, rule, q: np.ndarray, p: int, denominator: np.ndarray) -> complex:
    xi = rule.z
    values = polyval(xi, q) * np.exp(rule.log_of(sym) + 1j * (1 - p) * rule.theta) / denominator
    return rule.integrate(values) / TWO_PI


def _checked(fine: complex, coarse: complex, tol: float, what: str) -> complex:
    err = abs(fine - coarse)
    if err > tol * max(1.0, abs(fine)):
        raise ToleranceNotMet(f"{what}: quadrature estimate {err:.2e} above tolerance", err)
    return fine


def cauchy_at_singularity(sym: FhSymbol, q, p: int, j: int, side: str = "outside", *,
                          panels: int | None = None, tol: float = CAUCHY_TOL) -> complex:
    """
    int_C q(xi) f(xi) / (xi - z_j) d(xi) / (2 pi i xi^p), taken at the singular point z_j.

    For Re(alpha_j) > 0 the integrand behaves like |xi - z_j|^{2 Re(alpha_j) - 1}, the
    integral converges absolutely and both boundary values at z_j coincide with it.

    Args:
        sym (FhSymbol): Validated symbol
        q (array_like): Ascending coefficients of the polynomial q
        p (int): Power of xi in the denominator
        j (int): Singularity index
        side (str): "inside" or "outside"; both give the same value here
        panels (int, optional): Panels per arc
        tol (float): Relative tolerance of the coarse/fine check

    Returns:
        complex: The Cauchy integral at z_j

    Raises:
        RegularizationRequired: Re(alpha_j) <= 0
        ToleranceNotMet: The coarse/fine discrepancy exceeds tol
    """
    target = sym.singularities[j]
    if complex(target.alpha).real <= 0:
        raise RegularizationRequired(f"Re(alpha_{j}) = {complex(target.alpha).real:g} <= 0 needs the "
                                     "regularized transform")
    if side not in SIDES:
        raise PreconditionViolated(f"side must be one of {SIDES}")
    q = np.atleast_1d(np.asarray(q, dtype=complex))
    if not np.any(q):
        return 0j
    panels = panels or default_panels(max(q.size, abs(p)))
    z_j = np.exp(1j * target.theta)

    def on(rule) -> complex:
        delta = rule.offsets[j]
        # xi - z_j = z_j (e^{i delta} - 1), kept accurate for tiny delta
        denominator = z_j * 2j * np.sin(0.5 * delta) * np.exp(0.5j * delta)
        return _cauchy_on_rule(sym, rule, q, p, denominator)

    fine = on(build_circle_rule(sym, panels))
    coarse = on(build_circle_rule(sym, max(1, panels // 2), step=2.0 * DE_STEP))
    return _checked(fine, coarse, tol, f"Cauchy transform at z_{j}")


def cauchy_transform(sym: FhSymbol, q, p: int, z: complex, *, panels: int | None = None,
                     tol: float = CAUCHY_TOL) -> complex:
    """
    int_C q(xi) f(xi) / (xi - z) d(xi) / (2 pi i xi^p) at a point z off the unit circle.

    Accuracy degrades as z approaches the circle; points with | |z| - 1 | >= 0.1 are safe.
    """
    q = np.atleast_1d(np.asarray(q, dtype=complex))
    if not np.any(q):
        return 0j
    if abs(abs(z) - 1.0) < 1e-12:
        raise PreconditionViolated("cauchy_transform needs a point off the unit circle")
    panels = panels or default_panels(max(q.size, abs(p)))

    def on(rule) -> complex:
        return _cauchy_on_rule(sym, rule, q, p, rule.z - z)

    fine = on(build_circle_rule(sym, panels))
    coarse = on(build_circle_rule(sym, max(1, panels // 2), step=2.0 * DE_STEP))
    return _checked(fine, coarse, tol, f"Cauchy transform at z = {z}")


def y_tilde_at_singularity(sym: FhSymbol, pair: OrthoPolyPair, j: int) -> tuple[complex, complex]:
    """
    (tilde-Y_12^{(n)}(z_j), tilde-Y_22^{(n+1)}(z_j)) for n = pair.n.

    tilde-Y_12^{(n)} = chi_n^{-1} int phi_n(xi) f / (xi - z_j) d(xi) / (2 pi i xi^n)
    tilde-Y_22^{(n+1)} = -chi_n int hat-phi_n(xi^{-1}) f / (xi - z_j) d(xi) / (2 pi i xi)
    """
    n = pair.n
    y12 = cauchy_at_singularity(sym, pair.phi, n, j) / pair.chi
    # hat-phi_n(xi^{-1}) = xi^{-n} * (reversed coefficients)(xi)
    y22 = -pair.chi * cauchy_at_singularity(sym, pair.phi_hat[::-1], n + 1, j)
    return y12, y22


def rhm_matrix(sym: FhSymbol, table: MomentTable, n: int, z: complex) -> np.ndarray:
    """
    Y^{(n)}(z) at a point off the unit circle.

    Args:
        sym (FhSymbol): The weight
        table (MomentTable): Its moments, n_max >= n
        n (int): Index, n >= 1
        z (complex): Evaluation point with |z| != 1

    Returns:
        np.ndarray: 2 x 2 complex matrix, det Y = 1
    """
    if n < 1:
        raise PreconditionViolated("Y^{(n)} needs n >= 1")
    y11, y21 = y_first_column(table, n)
    return np.array([
        [polyval(z, y11), cauchy_transform(sym, y11, n, z)],
        [polyval(z, y21), cauchy_transform(sym, y21, n, z)],
    ], dtype=complex)
