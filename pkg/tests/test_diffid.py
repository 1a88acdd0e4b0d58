import math

import numpy as np
import pytest

from fh_structs.fh_errors import DeformationVanishes, PreconditionViolated, RegularizationRequired
from determinant import logdet_series
from diffid import (
    DeformedSymbol, cauchy_at_singularity, cauchy_transform, ortho_pair, rhm_matrix,
    verify_identity_alpha_beta, verify_identity_t, y_first_column,
)
from moments import build_circle_rule, compute_moments

from conftest import make_symbol


def test_ortho_pair_root_factor(alpha_one_symbol):
    pair = ortho_pair(compute_moments(alpha_one_symbol, 2), 1)
    assert pair.chi == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-12)
    # leading coefficients equal chi_n
    assert pair.phi[-1] == pytest.approx(pair.chi, rel=1e-12)
    assert pair.phi_hat[-1] == pytest.approx(pair.chi, rel=1e-12)


def test_orthogonality(mixed_symbol):
    n = 6
    table = compute_moments(mixed_symbol, n + 1)
    pair = ortho_pair(table, n)
    for j in range(n + 1):
        # (1/2pi) int phi_n z^{-j} f = sum_s phi_s f_{j-s}
        left = sum(pair.phi[s] * table.coeff(j - s) for s in range(n + 1))
        right = sum(pair.phi_hat[s] * table.coeff(s - j) for s in range(n + 1))
        target = 1.0 / pair.chi if j == n else 0.0
        assert abs(left - target) < 1e-10
        assert abs(right - target) < 1e-10


def test_polynomial_recurrence(mixed_symbol):
    n = 6
    table = compute_moments(mixed_symbol, n + 1)
    series = logdet_series(table, n + 1)
    current = ortho_pair(table, n, series)
    previous = ortho_pair(table, n - 1, series)
    lhs = np.append(-previous.chi * previous.phi_hat[::-1], 0.0)
    rhs = -current.chi * current.phi_hat[::-1] + current.phi_hat[0] * current.phi
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_first_column_is_branch_free(mixed_symbol):
    n = 5
    table = compute_moments(mixed_symbol, n + 1)
    y11, y21 = y_first_column(table, n)
    pair = ortho_pair(table, n)
    assert y11[-1] == 1.0
    assert np.allclose(y11, pair.phi / pair.chi, atol=1e-12)
    previous = ortho_pair(table, n - 1)
    assert np.allclose(y21, -previous.chi * previous.phi_hat[::-1], atol=1e-10)


def test_first_column_order_zero(identity_symbol):
    y11, y21 = y_first_column(compute_moments(identity_symbol, 1), 0)
    assert np.allclose(y11, [1.0])
    assert np.allclose(y21, [0.0])


@pytest.mark.parametrize("z", [0.5, -0.5j, 2.0, -2.0 + 0.1j])
def test_rhm_matrix_is_unimodular(mixed_symbol, z):
    n = 4
    y = rhm_matrix(mixed_symbol, compute_moments(mixed_symbol, n + 1), n, z)
    assert abs(np.linalg.det(y) - 1.0) < 1e-8


def test_cauchy_transform_at_root_point(alpha_one_symbol):
    # |xi - 1|^2 / (xi - 1) = -1 + 1/xi
    assert cauchy_at_singularity(alpha_one_symbol, [1.0], 0, 0) == pytest.approx(1.0, abs=1e-10)
    assert cauchy_at_singularity(alpha_one_symbol, [1.0], 1, 0) == pytest.approx(-1.0, abs=1e-10)
    assert cauchy_at_singularity(alpha_one_symbol, [0.0, 0.0], 1, 0) == 0


def test_cauchy_transform_off_circle(identity_symbol):
    # int dxi / ((xi - z) 2 pi i) is 1 inside and 0 outside
    assert cauchy_transform(identity_symbol, [1.0], 0, 0.3) == pytest.approx(1.0, abs=1e-12)
    assert cauchy_transform(identity_symbol, [1.0], 0, 3.0) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(PreconditionViolated):
        cauchy_transform(identity_symbol, [1.0], 0, 1.0)


def test_cauchy_transform_needs_positive_root(beta_pair_symbol):
    with pytest.raises(RegularizationRequired):
        cauchy_at_singularity(beta_pair_symbol, [1.0], 0, 0)


@pytest.mark.parametrize("alpha, beta, gamma", [(0.6, 0.1, "alpha"), (0.6, 0.1, "beta"), (0.0, 0.3, "beta")])
def test_alpha_beta_identity(alpha, beta, gamma):
    report = verify_identity_alpha_beta(make_symbol((0.0, alpha, beta)), 8, 0, gamma)
    assert report.rel_err < 1e-5
    assert report.params["gamma"] == gamma


def test_alpha_beta_identity_two_points():
    sym = make_symbol((0.0, 0.6, 0.1), (2.0, 0.0, -0.2))
    assert verify_identity_alpha_beta(sym, 6, 1, "beta").rel_err < 1e-5


def test_alpha_beta_identity_preconditions(szego_symbol):
    with pytest.raises(PreconditionViolated):
        verify_identity_alpha_beta(szego_symbol, 8, 0, "alpha")
    with pytest.raises(RegularizationRequired):
        verify_identity_alpha_beta(make_symbol((0.0, -0.2, 0.1)), 8, 0, "beta")
    with pytest.raises(PreconditionViolated):
        verify_identity_alpha_beta(make_symbol((0.0, 0.6, 0.1)), 8, 3, "alpha")


def test_t_identity_with_root_factor():
    sym = make_symbol((0.0, 0.5, 0), v={1: 0.2, -1: 0.2})
    assert verify_identity_t(sym, 8, 0.5).rel_err < 1e-5


def test_t_identity_smooth_symbol():
    sym = make_symbol((0.0, 0, 0), v={1: 0.2, -1: 0.2})
    assert verify_identity_t(sym, 8, 1.0).rel_err < 1e-6


def test_t_identity_without_smooth_part(beta_pair_symbol):
    report = verify_identity_t(beta_pair_symbol, 4, 0.5)
    assert report.lhs == 0 and report.rhs == 0


def test_t_identity_preconditions(szego_symbol):
    with pytest.raises(PreconditionViolated):
        verify_identity_t(szego_symbol, 8, 0.0)
    with pytest.raises(PreconditionViolated):
        verify_identity_t(szego_symbol, 0, 0.5)
    with pytest.raises(DeformationVanishes):
        verify_identity_t(make_symbol((0.0, 0, 0), v={0: 1j * math.pi}), 4, 0.5)


def test_deformed_symbol_end_points(mixed_symbol):
    rule = build_circle_rule(mixed_symbol, 8)
    at_one = DeformedSymbol(mixed_symbol, 1.0).log_on_rule(rule)
    assert np.allclose(at_one, rule.log_of(mixed_symbol), atol=1e-13)
    at_zero = DeformedSymbol(mixed_symbol, 0.0).log_on_rule(rule)
    assert np.allclose(at_zero, rule.log_of(mixed_symbol.without_smooth_part()), atol=1e-13)
