import cmath
import json
import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from fh_structs import FhSymbol, Singularity
from fh_structs.fh_errors import (
    ConfigError, EmptySingularity, EvaluationAtSingularity, IntegrabilityViolation,
    NotAJumpOnlySingularity, OrderingViolation,
)
from fh_symbol import (
    dump_symbol, evaluate, jump_delta_f, load_symbol, seminorm, smooth_part, symbol_from_dict,
    symbol_to_dict, validate, wiener_hopf_at,
)

from conftest import make_symbol


def test_validate_accepts_identity(identity_symbol):
    assert validate(identity_symbol) is identity_symbol


def test_validate_rejects_non_integrable_root():
    with pytest.raises(IntegrabilityViolation):
        validate(FhSymbol((Singularity(0.0, alpha=-0.6),)))


@pytest.mark.parametrize("thetas", [(0.0, math.pi, math.pi / 2), (0.5,), (0.0, 7.0), (0.0, 1.0, 1.0)])
def test_validate_rejects_bad_ordering(thetas):
    sings = tuple(Singularity(t, beta=0.1) for t in thetas)
    with pytest.raises(OrderingViolation):
        validate(FhSymbol(sings))


def test_validate_rejects_empty_record():
    with pytest.raises(EmptySingularity):
        validate(FhSymbol((Singularity(0.0), Singularity(1.0))))


def test_identity_evaluates_to_one(identity_symbol):
    for theta in np.linspace(0.0, 6.0, 7):
        assert evaluate(identity_symbol, theta) == pytest.approx(1.0, abs=1e-15)


def test_root_factor_at_minus_one(alpha_one_symbol):
    assert evaluate(alpha_one_symbol, math.pi) == pytest.approx(4.0, rel=1e-14)


def test_jump_only_point_takes_right_branch():
    sym = make_symbol((0.0, 0, 0.4j))
    assert evaluate(sym, 0.0) == pytest.approx(math.exp(0.4 * math.pi), rel=1e-13)


def test_evaluation_at_root_singularity_is_rejected(alpha_one_symbol):
    with pytest.raises(EvaluationAtSingularity):
        evaluate(alpha_one_symbol, 0.0)


@pytest.mark.parametrize("j", [0, 1])
def test_one_sided_limits_jump_by_phase(mixed_symbol, j):
    beta = complex(mixed_symbol.singularities[j].beta)
    theta_j = mixed_symbol.singularities[j].theta
    expected = cmath.exp(2j * math.pi * beta)
    previous = None
    for eps in (1e-3, 1e-4, 1e-5, 1e-6):
        ratio = evaluate(mixed_symbol, theta_j - eps) / evaluate(mixed_symbol, theta_j + eps)
        err = abs(ratio - expected)
        # the mismatch comes only from V and the root factors, so it shrinks like eps
        if previous is not None:
            assert err < 0.2 * previous + 1e-12
        previous = err
    assert previous < 1e-5


def test_smooth_part_is_exact_fourier_sum(szego_symbol):
    theta = np.linspace(0.0, 2.0 * math.pi, 33, endpoint=False)
    expected = np.exp(0.6 * np.cos(theta))
    values = np.array([evaluate(szego_symbol, t) for t in theta])
    assert np.max(np.abs(values - expected)) < 1e-14
    assert np.allclose(smooth_part(szego_symbol, theta), 0.6 * np.cos(theta), atol=1e-15)


def test_seminorm_examples(identity_symbol):
    assert seminorm(identity_symbol) == 0.0
    assert seminorm(make_symbol((0.0, 0.5, -0.25), (math.pi, 0, 0.25))) == pytest.approx(0.5)
    # z_0 carries nothing and drops out
    assert seminorm(make_symbol((0.0, 0, 0), (1.0, 0, 0.3))) == 0.0


@given(st.floats(-3.0, 3.0))
def test_seminorm_shift_invariance(shift):
    base = make_symbol((0.0, 0.5, -0.25), (1.0, 0, 0.1), (4.0, 0.2, 0.25))
    shifted = make_symbol((0.0, 0.5, -0.25 + shift), (1.0, 0, 0.1 + shift), (4.0, 0.2, 0.25 + shift))
    assert seminorm(shifted) == pytest.approx(seminorm(base), abs=1e-12)


def test_wiener_hopf_values(identity_symbol, szego_symbol):
    trivial = wiener_hopf_at(identity_symbol, 0)
    assert (trivial.v0, trivial.b_plus_at, trivial.b_minus_at) == (0, 1, 1)

    at_one = wiener_hopf_at(szego_symbol, 0)
    assert at_one.v0 == 0
    assert at_one.b_plus_at == pytest.approx(math.exp(0.3), rel=1e-15)
    assert at_one.b_minus_at == pytest.approx(math.exp(0.3), rel=1e-15)

    at_minus_one = wiener_hopf_at(make_symbol((0.0, 0, 0), (math.pi, 0, 0.1), v={1: 0.3, -1: 0.3}), 1)
    assert at_minus_one.b_plus_at == pytest.approx(math.exp(-0.3), rel=1e-14)
    assert at_minus_one.b_minus_at == pytest.approx(math.exp(-0.3), rel=1e-14)
    product = at_minus_one.b_plus_at * cmath.exp(at_minus_one.v0) * at_minus_one.b_minus_at
    assert product == pytest.approx(math.exp(-0.6), rel=1e-12)


def test_jump_is_the_one_sided_difference():
    sym = make_symbol((0.0, 0, 0.4j))
    assert jump_delta_f(sym, 0) == pytest.approx(-2.0 * math.sinh(0.4 * math.pi), rel=1e-13)


def test_jump_matches_limit_with_neighbours():
    sym = make_symbol((0.0, 0.5, 0.1), (2.0, 0, 0.3 + 0.1j), v={1: 0.2, -1: 0.2})
    theta_j, eps = 2.0, 1e-7
    limit = evaluate(sym, theta_j - eps) - evaluate(sym, theta_j + eps)
    assert jump_delta_f(sym, 1) == pytest.approx(limit, abs=1e-5)


def test_no_jump_cases(identity_symbol):
    assert jump_delta_f(identity_symbol, 0) == 0
    assert abs(jump_delta_f(make_symbol((0.0, 0, 1.0)), 0)) < 1e-15


def test_jump_rejects_root_point(alpha_one_symbol):
    with pytest.raises(NotAJumpOnlySingularity):
        jump_delta_f(alpha_one_symbol, 0)


def test_symbol_files(tmp_path, mixed_symbol, fixtures_dir):
    path = tmp_path / "mixed.json"
    dump_symbol(mixed_symbol, path)
    again = load_symbol(path)
    assert symbol_to_dict(again) == symbol_to_dict(mixed_symbol)

    bs = load_symbol(fixtures_dir / "bs-complex.json")
    assert bs.singularities[0].beta == 0.4j


def test_bad_symbol_files(tmp_path, fixtures_dir):
    with pytest.raises(IntegrabilityViolation):
        load_symbol(fixtures_dir / "invalid.json")
    with pytest.raises(ConfigError):
        load_symbol(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        load_symbol(broken)
    with pytest.raises(ConfigError):
        symbol_from_dict(json.loads('{"singularities": [{"theta": 0.0, "alpha": [1, 2, 3]}]}'))


def test_symbols_are_hashable():
    a = make_symbol((0.0, 0.5, 0), v={1: 0.2, -1: 0.2})
    b = make_symbol((0.0, 0.5, 0), v={-1: 0.2, 1: 0.2})
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
    cache = {a: "cached"}
    assert cache[b] == "cached"
    assert make_symbol((0.0, 0.5, 0)) not in cache
