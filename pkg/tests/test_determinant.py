import math

import numpy as np
import pytest

from fh_structs.fh_errors import PreconditionViolated, RecursionBreakdown, SingularMinor
from asymptotics import bs_exact_logdet
from determinant import (
    heine_direct, log_minor, logdet_series, logdet_series_elimination, logdet_series_recursion,
)
from moments import compute_moments

from conftest import make_symbol


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def test_identity_series_vanishes(identity_symbol):
    table = compute_moments(identity_symbol, 64)
    for series in (logdet_series_elimination(table, 64), logdet_series_recursion(table, 64)):
        assert series.n_max == 64
        assert series.breakdown_at is None
        assert np.max(np.abs(series.logdet)) < 1e-10
        assert series.log_d(0) == 0


def test_root_factor_determinants_are_n_plus_one(alpha_one_symbol):
    table = compute_moments(alpha_one_symbol, 128)
    elimination = logdet_series_elimination(table, 128, workers=4)
    recursion = logdet_series_recursion(table, 128)
    for n in range(1, 129):
        exact = math.log(n + 1)
        assert abs(elimination.log_d(n) - exact) < 1e-8
        assert abs(recursion.log_d(n) - exact) < 1e-8
        assert abs(bs_exact_logdet(1.0, 0.0, n) - exact) < 1e-8
    # chi_{n-1}^2 = D_{n-1} / D_n
    assert recursion.chi_sq[9] == pytest.approx(10.0 / 11.0, rel=1e-10)
    assert elimination.method == "elimination" and recursion.method == "recursion"


def test_complex_parameters_match_closed_form(bs_complex_symbol):
    table = compute_moments(bs_complex_symbol, 128)
    series = logdet_series_elimination(table, 128)
    for n in (1, 2, 5, 17, 64, 128):
        d = series.det(n)
        assert _rel(series.log_d(n), bs_exact_logdet(0.3, 0.4j, n)) < 1e-7
        # positive symbol, positive determinant
        assert d.real > 0 and abs(d.imag) < 1e-9 * d.real


def test_algorithms_agree_on_mixed_symbol(mixed_symbol):
    table = compute_moments(mixed_symbol, 48)
    elimination = logdet_series_elimination(table, 48)
    recursion = logdet_series_recursion(table, 48)
    assert np.max(np.abs(elimination.logdet - recursion.logdet)) < 1e-8


def test_algorithms_agree_on_imaginary_jump():
    table = compute_moments(make_symbol((0.0, 0, 0.4j)), 128)
    elimination = logdet_series_elimination(table, 128)
    recursion = logdet_series_recursion(table, 128)
    for n in range(1, 129):
        logdet = elimination.log_d(n)
        assert abs(logdet - recursion.log_d(n)) < 1e-8 * (1.0 + abs(logdet))


def test_strong_szego_value(szego_symbol):
    table = compute_moments(szego_symbol, 16)
    assert abs(logdet_series(table, 16).log_d(16) - 0.09) < 1e-6


def test_log_minor_counts_row_swaps(alpha_one_symbol):
    table = compute_moments(alpha_one_symbol, 3)
    value, smallest = log_minor(table, 3)
    assert np.exp(value) == pytest.approx(4.0, rel=1e-12)
    assert smallest > 0


def test_vanishing_minor_stops_both_series(breakdown_symbol):
    table = compute_moments(breakdown_symbol, 4)
    for series in (logdet_series_elimination(table, 4), logdet_series_recursion(table, 4),
                   logdet_series(table, 4)):
        assert series.breakdown_at == 1
        assert series.n_max == 0
    with pytest.raises(SingularMinor) as info:
        logdet_series_elimination(table, 4, strict=True)
    assert info.value.breakdown_at == 1
    with pytest.raises(RecursionBreakdown):
        logdet_series_recursion(table, 4, strict=True)


def test_series_precondition(identity_symbol):
    table = compute_moments(identity_symbol, 4)
    with pytest.raises(PreconditionViolated):
        logdet_series_elimination(table, 5)


@pytest.mark.parametrize("name", ["identity_symbol", "alpha_one_symbol", "szego_symbol"])
@pytest.mark.parametrize("n", [1, 2])
def test_heine_integral_matches_series(request, name, n):
    sym = request.getfixturevalue(name)
    table = compute_moments(sym, 4)
    series = logdet_series(table, 4)
    assert _rel(heine_direct(sym, n), series.det(n)) < 1e-7


def test_heine_three_fold(alpha_one_symbol):
    assert heine_direct(alpha_one_symbol, 3, tol=1e-10) == pytest.approx(4.0, rel=1e-8)


def test_heine_rejects_large_orders(identity_symbol):
    with pytest.raises(PreconditionViolated):
        heine_direct(identity_symbol, 4)
