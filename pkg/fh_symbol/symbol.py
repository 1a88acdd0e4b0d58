"""
Fisher-Hartwig Symbols

f(z) = exp(V(z)) z^{sum beta_j} prod_j |z - z_j|^{2 alpha_j} g_j(z) z_j^{-beta_j},  z = e^{i theta},

with g_j(z) = exp(i pi beta_j) for 0 <= theta < theta_j and exp(-i pi beta_j) for
theta_j <= theta < 2 pi. The symbol is always handled through its logarithm and
exponentiated once at the end, so |z - z_j|^{2 alpha_j} stays unambiguous for
complex alpha_j.

Near a singular point the angle differences theta - theta_j must be known to full
relative accuracy, which theta itself cannot provide once it has been rounded.
log_symbol() therefore takes the differences from the caller (the quadrature rules
build them from distances to the arc ends); node_geometry() derives them from
plain angles for pointwise evaluation.
"""

import json
import logging
import math
from pathlib import Path

import numpy as np

from fh_structs import FhSymbol, Singularity, WienerHopfData, TWO_PI
from fh_structs.fh_errors import (
    ConfigError, IntegrabilityViolation, OrderingViolation, EmptySingularity,
    EvaluationAtSingularity, NotAJumpOnlySingularity,
)

logger = logging.getLogger(__name__)


def validate(sym: FhSymbol) -> FhSymbol:
    """
    Check the structural invariants of a symbol.

    Args:
        sym (FhSymbol): Candidate symbol

    Returns:
        FhSymbol: The same symbol, unchanged

    Raises:
        OrderingViolation: theta_0 != 0, or thetas not strictly increasing inside [0, 2*pi)
        IntegrabilityViolation: Some Re(alpha_j) <= -1/2
        EmptySingularity: A record with j >= 1 carries alpha_j = beta_j = 0
    """
    if not sym.singularities or sym.singularities[0].theta != 0.0:
        raise OrderingViolation("the first singularity must sit at theta = 0")
    thetas = sym.thetas
    if np.any(thetas >= TWO_PI) or np.any(np.diff(thetas) <= 0):
        raise OrderingViolation(f"singular angles {thetas.tolist()} are not strictly increasing in [0, 2*pi)")

    for j, s in enumerate(sym.singularities):
        if complex(s.alpha).real <= -0.5:
            raise IntegrabilityViolation(f"Re(alpha_{j}) = {complex(s.alpha).real:g} <= -1/2")
        if j >= 1 and s.is_trivial:
            raise EmptySingularity(f"singularity {j} at theta = {s.theta:g} has alpha = beta = 0")

    if any(not isinstance(k, (int, np.integer)) for k in sym.v_coeffs):
        raise ConfigError("Fourier indices of V must be integers")
    return sym


def smooth_part(sym: FhSymbol, theta) -> np.ndarray:
    """V(e^{i theta}) = sum_k V_k e^{i k theta} on an array of angles."""
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape, dtype=complex)
    for k, vk in sorted(sym.v_coeffs.items()):
        if vk != 0:
            out += complex(vk) * np.exp(1j * k * theta)
    return out


def node_geometry(sym: FhSymbol, theta) -> tuple[np.ndarray, np.ndarray]:
    """
    Angle offsets and arc indices for plain angles.

    Args:
        sym (FhSymbol): Symbol whose singular angles split the circle
        theta (array_like): Angles in [0, 2*pi)

    Returns:
        tuple: offsets of shape (m + 1, N) with theta - theta_j, and the arc index of
        every angle (arc a runs from theta_a to theta_{a+1}, the last one back to 2*pi)
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    thetas = sym.thetas
    offsets = theta[None, :] - thetas[:, None]
    arc = np.searchsorted(thetas, theta, side="right") - 1
    return offsets, arc


def log_symbol(sym: FhSymbol, theta, offsets: np.ndarray, arc: np.ndarray) -> np.ndarray:
    """
    ln f at angles theta, given accurate offsets theta - theta_j (any representative
    modulo 2*pi) and the arc index of each angle.
    """
    theta = np.asarray(theta, dtype=float)
    alphas, betas, thetas = sym.alphas, sym.betas, sym.thetas

    logf = smooth_part(sym, theta) + 1j * theta * betas.sum()
    for j in range(sym.m + 1):
        alpha, beta = alphas[j], betas[j]
        if alpha != 0:
            logf += 2.0 * alpha * np.log(np.abs(2.0 * np.sin(0.5 * offsets[j])))
        if beta != 0:
            # arc < j  <=>  theta < theta_j; never true for j = 0
            logf += np.where(arc < j, 1j * math.pi * beta, -1j * math.pi * beta) - 1j * thetas[j] * beta
    return logf


def evaluate(sym: FhSymbol, theta: float) -> complex:
    """
    The symbol at z = e^{i theta}.

    Exactly at a singular angle the value is only defined when the point carries
    no root factor; a jump-only point takes the theta_j <= theta branch of g_j.

    Args:
        sym (FhSymbol): Validated symbol
        theta (float): Angle in radians, reduced modulo 2*pi

    Returns:
        complex: f(e^{i theta})

    Raises:
        EvaluationAtSingularity: theta hits some theta_j with alpha_j != 0

    Example:
        >>> evaluate(FhSymbol((Singularity(0.0, alpha=1),)), math.pi)
        (4+0j)
    """
    theta = float(theta) % TWO_PI
    for j, s in enumerate(sym.singularities):
        if theta == s.theta and s.alpha != 0:
            raise EvaluationAtSingularity(f"f is not defined at theta_{j} = {s.theta:g}")
    offsets, arc = node_geometry(sym, theta)
    return complex(np.exp(log_symbol(sym, np.array([theta]), offsets, arc))[0])


def seminorm(sym: FhSymbol) -> float:
    """
    |||beta||| = max over participating pairs of |Re beta_j - Re beta_k|.

    The point z_0 = 1 takes part only when it carries alpha_0 or beta_0.
    """
    re_betas = [complex(s.beta).real for j, s in enumerate(sym.singularities)
                if j > 0 or not s.is_trivial]
    if len(re_betas) < 2:
        return 0.0
    return max(re_betas) - min(re_betas)


def _half_sums(sym: FhSymbol, theta: float) -> tuple[complex, complex]:
    z = complex(math.cos(theta), math.sin(theta))
    plus = sum((complex(v) * z ** k for k, v in sym.v_coeffs.items() if k > 0), 0j)
    minus = sum((complex(v) * z ** k for k, v in sym.v_coeffs.items() if k < 0), 0j)
    return plus, minus


def wiener_hopf_log_at(sym: FhSymbol, j: int) -> tuple[complex, complex]:
    """(ln b_+(z_j), ln b_-(z_j)) as the exact finite Fourier half sums."""
    return _half_sums(sym, sym.singularities[j].theta)


def wiener_hopf_at(sym: FhSymbol, j: int) -> WienerHopfData:
    """
    Values of the canonical Wiener-Hopf factors of e^V at z_j.

    b_+(z) = exp(sum_{k >= 1} V_k z^k) and b_-(z) = exp(sum_{k <= -1} V_k z^k), so
    that e^{V(z)} = b_+(z) e^{V_0} b_-(z).

    Args:
        sym (FhSymbol): Validated symbol
        j (int): Singularity index

    Returns:
        WienerHopfData: V_0, b_+(z_j), b_-(z_j)
    """
    plus, minus = wiener_hopf_log_at(sym, j)
    return WienerHopfData(v0=sym.v_coeff(0), b_plus_at=complex(np.exp(plus)),
                          b_minus_at=complex(np.exp(minus)))


def jump_delta_f(sym: FhSymbol, j: int) -> complex:
    """
    Jump of f across a jump-only point: lim (f(z_j e^{-i eps}) - f(z_j e^{+i eps})).

    Args:
        sym (FhSymbol): Validated symbol
        j (int): Index of a singularity with alpha_j = 0

    Returns:
        complex: Continuous part of f at z_j times (e^{i pi beta_j} - e^{-i pi beta_j})

    Raises:
        NotAJumpOnlySingularity: alpha_j != 0
    """
    target = sym.singularities[j]
    if target.alpha != 0:
        raise NotAJumpOnlySingularity(f"singularity {j} has alpha = {complex(target.alpha)}")
    beta_j = complex(target.beta)
    if beta_j == 0:
        return 0j

    theta_j = target.theta
    log_cont = complex(smooth_part(sym, theta_j)) + 1j * theta_j * (complex(sym.betas.sum()) - beta_j)
    for k, s in enumerate(sym.singularities):
        if k == j:
            continue
        if s.alpha != 0:
            log_cont += 2.0 * complex(s.alpha) * math.log(abs(2.0 * math.sin(0.5 * (theta_j - s.theta))))
        if s.beta != 0:
            side = 1.0 if k > j else -1.0
            log_cont += side * 1j * math.pi * complex(s.beta) - 1j * s.theta * complex(s.beta)
    jump = np.exp(1j * math.pi * beta_j) - np.exp(-1j * math.pi * beta_j)
    return complex(np.exp(log_cont) * jump)


# JSON schema: {"singularities": [{"theta": t, "alpha": [re, im], "beta": [re, im]}], "v": {"k": [re, im]}}

def _parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex values are [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def _dump_complex(value: complex) -> list[float]:
    value = complex(value)
    return [value.real, value.imag]


def symbol_from_dict(data: dict) -> FhSymbol:
    """Build and validate a symbol from the JSON schema."""
    try:
        sings = tuple(
            Singularity(theta=float(rec["theta"]),
                        alpha=_parse_complex(rec.get("alpha", 0.0)),
                        beta=_parse_complex(rec.get("beta", 0.0)))
            for rec in data["singularities"]
        )
        v_coeffs = {int(k): _parse_complex(v) for k, v in data.get("v", {}).items()}
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed symbol description: {e}") from e
    return validate(FhSymbol(singularities=sings, v_coeffs=v_coeffs))


def symbol_to_dict(sym: FhSymbol) -> dict:
    return {
        "singularities": [
            {"theta": s.theta, "alpha": _dump_complex(s.alpha), "beta": _dump_complex(s.beta)}
            for s in sym.singularities
        ],
        "v": {str(k): _dump_complex(v) for k, v in sorted(sym.v_coeffs.items())},
    }


def load_symbol(path: str | Path) -> FhSymbol:
    """
    Read a symbol file.

    Raises:
        ConfigError: Unreadable file or malformed JSON
        SymbolError: The described symbol breaks an invariant
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read symbol file {path}: {e}") from e
    sym = symbol_from_dict(data)
    logger.info("loaded symbol %s with m = %d, deg V = %d", path, sym.m, sym.degree)
    return sym


def dump_symbol(sym: FhSymbol, path: str | Path) -> None:
    Path(path).write_text(json.dumps(symbol_to_dict(sym), indent=2) + "\n")
