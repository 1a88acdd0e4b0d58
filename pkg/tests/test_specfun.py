import math

from hypothesis import assume, given, settings, strategies as st
import mpmath
import numpy as np
import pytest
from scipy import integrate, special

from fh_structs.fh_errors import PoleError
from specfun import ln_barnes_g, ln_barnes_g_ratio_run, ln_gamma


def _mod_two_pi_i(w: complex) -> complex:
    return complex(w.real, math.remainder(w.imag, 2.0 * math.pi))


def test_ln_gamma_small_factorials():
    assert ln_gamma(1).value == pytest.approx(0.0, abs=1e-15)
    assert ln_gamma(5).value == pytest.approx(math.log(24.0), rel=1e-14)


@pytest.mark.parametrize("z", [0.5 + 0.5j, 3.25 - 7.5j, -2.5 + 0.1j, 0.01 + 40j])
def test_ln_gamma_against_mpmath(z):
    expected = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
    assert abs(ln_gamma(z).value - expected) <= 1e-13 * max(1.0, abs(expected))


@pytest.mark.parametrize("z", [0, -1, -7])
def test_ln_gamma_poles(z):
    with pytest.raises(PoleError):
        ln_gamma(z)


@pytest.mark.parametrize("z, expected", [(1, 0.0), (2, 0.0), (3, 0.0), (4, math.log(2.0)), (5, math.log(12.0))])
def test_ln_barnes_g_integers(z, expected):
    result = ln_barnes_g(z)
    assert not result.is_zero
    assert result.value == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("z", [0, -1, -4])
def test_ln_barnes_g_zeros_are_flagged(z):
    result = ln_barnes_g(z)
    assert result.is_zero
    assert result.value.real == -math.inf


@pytest.mark.parametrize("z", [0.3 + 0.2j, 1.5, 2.5 - 1.5j, 7.25 + 3j, -2.5 + 0.5j, 0.7 + 6j, 18.0 - 0.25j])
def test_ln_barnes_g_against_mpmath(z):
    expected = complex(mpmath.barnesg(mpmath.mpc(z.real, z.imag)))
    got = np.exp(ln_barnes_g(z).value)
    assert abs(got - expected) <= 1e-10 * abs(expected)


def test_large_argument_path_agrees_with_taylor_path():
    # 1.4 + 0.8i sits outside the Taylor disc around 1 and is lifted instead
    z = 1.4 + 0.8j
    expected = complex(mpmath.log(mpmath.barnesg(mpmath.mpc(z.real, z.imag))))
    assert abs(_mod_two_pi_i(ln_barnes_g(z).value - expected)) < 1e-11


def test_ratio_run_matches_difference_of_logs():
    a, n = 0.3 + 0.4j, 40
    expected = ln_barnes_g(n + 1 + a).value - ln_barnes_g(1 + a).value
    assert abs(_mod_two_pi_i(ln_barnes_g_ratio_run(a, n) - expected)) < 1e-9


@settings(max_examples=100, deadline=None)
@given(st.floats(-20.0, 20.0), st.floats(-20.0, 20.0))
def test_functional_equation(x, y):
    z = complex(x, y)
    assume(abs(z) <= 20.0)
    # stay away from the poles of Gamma and the zeros of G
    assume(not (x < 0.5 and abs(y) < 1e-3 and abs(x - round(x)) < 1e-3))
    lhs = ln_barnes_g(z + 1).value - ln_barnes_g(z).value - ln_gamma(z).value
    scale = max(1.0, abs(ln_barnes_g(z + 1).value))
    assert abs(_mod_two_pi_i(lhs)) < 1e-10 * scale


@pytest.mark.parametrize("z", [0.5, 1.7, 3.0])
def test_log_gamma_integral_identity(z):
    lhs, _ = integrate.quad(lambda x: special.gammaln(x + 1.0), 0.0, z, epsabs=1e-13, epsrel=1e-13)
    rhs = (0.5 * z * math.log(2.0 * math.pi) - 0.5 * z * (z + 1.0) + z * special.gammaln(z + 1.0)
           - ln_barnes_g(z + 1.0).value.real)
    assert lhs == pytest.approx(rhs, abs=1e-8)


@pytest.mark.parametrize("z", [0.25, 0.6, 1.0])
def test_doubling_integral_identity(z):
    def integrand(x):
        return (1.0 + special.digamma(1.0 + x) - 2.0 * special.digamma(1.0 + 2.0 * x)) * 2.0 * x

    lhs, _ = integrate.quad(integrand, 0.0, z, epsabs=1e-13, epsrel=1e-13)
    rhs = 2.0 * ln_barnes_g(1.0 + z).value - ln_barnes_g(1.0 + 2.0 * z).value
    assert lhs == pytest.approx(rhs.real, abs=1e-7)


@pytest.mark.parametrize("alpha, beta", [(0.3, 0.2), (1.0, 0.5), (0.75, 0.1)])
def test_jump_integral_identity(alpha, beta):
    def integrand(x):
        return ((alpha + x) * special.digamma(1.0 + alpha + x)
                - (alpha - x) * special.digamma(1.0 + alpha - x) - 2.0 * x)

    lhs, _ = integrate.quad(integrand, 0.0, beta, epsabs=1e-13, epsrel=1e-13)
    rhs = (ln_barnes_g(1.0 + alpha + beta).value + ln_barnes_g(1.0 + alpha - beta).value
           - 2.0 * ln_barnes_g(1.0 + alpha).value)
    assert lhs == pytest.approx(rhs.real, abs=1e-8)
