import math
from pathlib import Path

import pytest

from fh_structs import FhSymbol, Singularity
from fh_symbol import validate

FIXTURES = Path(__file__).parent / "fixtures"


def make_symbol(*singularities, v=None) -> FhSymbol:
    """Validated symbol from (theta, alpha, beta) triples and an optional {k: V_k}."""
    sings = tuple(Singularity(theta, complex(alpha), complex(beta)) for theta, alpha, beta in singularities)
    return validate(FhSymbol(singularities=sings, v_coeffs=dict(v or {})))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def identity_symbol() -> FhSymbol:
    return make_symbol((0.0, 0, 0))


@pytest.fixture
def alpha_one_symbol() -> FhSymbol:
    # f = |z - 1|^2 = 2 - z - 1/z, D_n = n + 1
    return make_symbol((0.0, 1.0, 0))


@pytest.fixture
def bs_complex_symbol() -> FhSymbol:
    return make_symbol((0.0, 0.3, 0.4j))


@pytest.fixture
def szego_symbol() -> FhSymbol:
    return make_symbol((0.0, 0, 0), v={1: 0.3, -1: 0.3})


@pytest.fixture
def beta_pair_symbol() -> FhSymbol:
    return make_symbol((0.0, 0, -0.25), (math.pi, 0, 0.25))


@pytest.fixture
def mixed_symbol() -> FhSymbol:
    return make_symbol((0.0, 0.5, 0.1), (2.0 * math.pi / 3.0, 0.25, -0.15), v={1: 0.2, -1: 0.2})


@pytest.fixture
def breakdown_symbol() -> FhSymbol:
    # f = -z, so f_0 = D_1 = 0
    return make_symbol((0.0, 0, 1.0))
