"""
Data Structures for the Fisher-Hartwig Toeplitz Toolkit

This module holds the plain data records passed between the numerical packages:
- Singularity and FhSymbol: the symbol f(z) on the unit circle
- MomentTable: Fourier coefficients f_j with error estimates
- DeterminantSeries: ln D_n for n = 1..N with the chi_n^2 ratios
- AsymptoticBreakdown, ChiAsymptotic: predictions of the large-n formulas
- OrthoPolyPair, IdentityReport: orthogonal polynomial data and identity checks
- RunConfig: one command of the shell

Records are immutable once built; numerical arrays are numpy arrays owned by the
record and must not be modified in place by consumers.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np
import scipy.linalg

from .fh_errors import ConfigError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Singularity:
    """
    One Fisher-Hartwig point z_j = exp(i*theta) on the unit circle.

    Attributes:
        theta (float): Angle in radians, in [0, 2*pi)
        alpha (complex): Exponent of the root factor |z - z_j|^(2*alpha)
        beta (complex): Strength of the jump exp(i*pi*beta) -> exp(-i*pi*beta)
    """
    theta: float
    alpha: complex = 0j
    beta: complex = 0j

    @property
    def is_trivial(self) -> bool:
        return self.alpha == 0 and self.beta == 0


@dataclass(frozen=True)
class FhSymbol:
    """
    A symbol with finitely many Fisher-Hartwig singularities and a trigonometric
    polynomial smooth part V.

    The first singularity always sits at theta = 0 (the point z_0 = 1), possibly
    with alpha = beta = 0.

    Attributes:
        singularities (tuple[Singularity, ...]): Ordered by increasing theta
        v_coeffs (dict[int, complex]): Fourier coefficients V_k of V, zero when absent.
            Treated as read-only; the hash is taken over its sorted items.
    """
    singularities: tuple[Singularity, ...]
    v_coeffs: dict[int, complex] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.singularities, tuple(sorted(self.v_coeffs.items()))))

    @property
    def m(self) -> int:
        return len(self.singularities) - 1

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.singularities], dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([s.alpha for s in self.singularities], dtype=complex)

    @property
    def betas(self) -> np.ndarray:
        return np.array([s.beta for s in self.singularities], dtype=complex)

    @property
    def degree(self) -> int:
        """Largest |k| with V_k != 0 (0 for V identically zero)."""
        nonzero = [abs(k) for k, v in self.v_coeffs.items() if v != 0]
        return max(nonzero, default=0)

    @property
    def has_smooth_part(self) -> bool:
        return any(v != 0 for v in self.v_coeffs.values())

    def v_coeff(self, k: int) -> complex:
        return complex(self.v_coeffs.get(k, 0j))

    def with_singularity(self, index: int, **changes) -> "FhSymbol":
        """Return a copy with fields of one singularity replaced."""
        sings = list(self.singularities)
        sings[index] = replace(sings[index], **changes)
        return FhSymbol(singularities=tuple(sings), v_coeffs=dict(self.v_coeffs))

    def without_smooth_part(self) -> "FhSymbol":
        return FhSymbol(singularities=self.singularities, v_coeffs={})


@dataclass(frozen=True)
class WienerHopfData:
    """Values of the Wiener-Hopf factors of exp(V) at one singular point."""
    v0: complex
    b_plus_at: complex
    b_minus_at: complex


@dataclass(frozen=True)
class LogGammaValue:
    value: complex


@dataclass(frozen=True)
class LogBarnesGValue:
    """
    A branch of ln G(z).

    When is_zero is set the argument is a non-positive integer, G vanishes there
    and value is -inf.
    """
    value: complex
    is_zero: bool = False


@dataclass(frozen=True)
class MomentTable:
    """
    Fourier coefficients f_j, j = -n_max..n_max, stored at index j + n_max.

    Attributes:
        n_max (int): Largest |j| in the table
        coeffs (np.ndarray): Complex coefficients
        err_est (np.ndarray): Absolute error estimate per coefficient
        tol (float): Requested absolute tolerance
        panels (int): Gauss panels per arc used by the fine rule
        degraded (bool): Set when some err_est exceeds tol
        cluster (tuple[bool, ...], optional): Per singularity, whether the rule clustered
            its end panels; None means the default alpha_j != 0
    """
    n_max: int
    coeffs: np.ndarray
    err_est: np.ndarray
    tol: float
    panels: int = 0
    degraded: bool = False
    cluster: tuple[bool, ...] | None = None

    def coeff(self, j: int) -> complex:
        if abs(j) > self.n_max:
            raise IndexError(f"moment f_{j} outside the table (n_max = {self.n_max})")
        return complex(self.coeffs[j + self.n_max])

    def error(self, j: int) -> float:
        return float(self.err_est[j + self.n_max])

    @property
    def worst_error(self) -> float:
        return float(np.max(self.err_est)) if self.err_est.size else 0.0

    def toeplitz(self, n: int) -> np.ndarray:
        """The n x n matrix (f_{j-k}), j, k = 0..n-1."""
        if n > self.n_max + 1:
            raise IndexError(f"a {n} x {n} matrix needs n_max >= {n - 1}")
        center = self.n_max
        column = self.coeffs[center:center + n]
        row = self.coeffs[center - n + 1:center + 1][::-1]
        return scipy.linalg.toeplitz(column, row)

    def max_entry(self, n: int) -> float:
        """Max-abs entry of the n x n moment matrix."""
        center = self.n_max
        return float(np.max(np.abs(self.coeffs[center - n + 1:center + n])))


@dataclass(frozen=True)
class DeterminantSeries:
    """
    ln D_n for n = 1..n_max and chi_n^2 = D_n / D_{n+1} for n = 0..n_max-1.

    logdet[n - 1] holds ln D_n; chi_sq[n] holds chi_n^2 with D_0 = 1. When a
    near-zero minor is met at D_k, breakdown_at = k and the series stops at k - 1.
    """
    n_max: int
    logdet: np.ndarray
    chi_sq: np.ndarray
    method: str
    breakdown_at: int | None = None

    def log_d(self, n: int) -> complex:
        if n == 0:
            return 0j
        if not 1 <= n <= self.n_max:
            raise IndexError(f"ln D_{n} not available (series ends at {self.n_max})")
        return complex(self.logdet[n - 1])

    def det(self, n: int) -> complex:
        return complex(np.exp(self.log_d(n)))


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """Additive pieces of ln of the large-n formula for D_n."""
    n: int
    szego_term: complex
    wh_term: complex
    power_term: complex
    pair_term: complex
    g_term: complex
    total: complex
    error_exponent: float
    valid: bool

    @classmethod
    def from_terms(cls, n: int, szego_term: complex, wh_term: complex, power_term: complex,
                   pair_term: complex, g_term: complex, error_exponent: float,
                   valid: bool) -> "AsymptoticBreakdown":
        total = szego_term + wh_term + power_term + pair_term + g_term
        return cls(n=n, szego_term=szego_term, wh_term=wh_term, power_term=power_term,
                   pair_term=pair_term, g_term=g_term, total=total,
                   error_exponent=error_exponent, valid=valid)


@dataclass(frozen=True)
class ChiAsymptotic:
    """Large-n prediction of chi_{n-1}^2 (smooth part V identically zero)."""
    n: int
    leading: complex
    oscillatory: complex
    total: complex


@dataclass(frozen=True)
class OrthoPolyPair:
    """
    The degree-n polynomials phi_n(z) and hat-phi_n(w) orthogonal with respect to f.

    Coefficients are stored in ascending powers; hat-phi_n is a polynomial in
    w = 1/z, so hat-phi_n(z^{-1}) = sum_s phi_hat[s] * z^{-s}.
    """
    n: int
    phi: np.ndarray
    phi_hat: np.ndarray
    chi: complex

    def phi_at(self, z):
        return np.polynomial.polynomial.polyval(z, self.phi)

    def phi_hat_at(self, w):
        return np.polynomial.polynomial.polyval(w, self.phi_hat)


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of a differential identity and their discrepancy."""
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    fd_step: float
    quad_tol: float
    params: dict

    @classmethod
    def from_sides(cls, lhs: complex, rhs: complex, fd_step: float, quad_tol: float,
                   params: dict) -> "IdentityReport":
        abs_err = abs(lhs - rhs)
        return cls(lhs=complex(lhs), rhs=complex(rhs), abs_err=abs_err,
                   rel_err=abs_err / (1.0 + abs(lhs)), fd_step=fd_step,
                   quad_tol=quad_tol, params=params)


SUBCOMMANDS = ("predict", "exact", "compare", "sweep", "verify-ab", "verify-t", "heine", "chi")
FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """
    One shell command, fully parsed.

    Attributes:
        subcommand (str): One of SUBCOMMANDS
        symbol_paths (list[str]): Symbol JSON files (sweep accepts several)
        n_grid (list[int]): Orders to evaluate, strictly increasing
        tol (float): Moment quadrature tolerance, in [1e-14, 1e-6]
        fd_step (float): Central finite-difference step for the identity checks
        output (str): Output path, "-" for standard output
        format (str): "csv" or "json"
        robust_fit (bool): Use the median-of-slopes decay estimator
        nu (int): Singularity index whose parameter is differentiated (verify-ab)
        gamma_kind (str): "alpha" or "beta" (verify-ab)
        t (float): Deformation parameter in (0, 1] (verify-t)
        workers (int): Thread-pool width
    """
    subcommand: str
    symbol_paths: list[str]
    n_grid: list[int]
    tol: float = 1e-12
    fd_step: float = 1e-4
    output: str = "-"
    format: str = "csv"
    robust_fit: bool = False
    nu: int = 0
    gamma_kind: str = "alpha"
    t: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if not self.symbol_paths:
            raise ConfigError("at least one --symbol is required")
        if not self.n_grid:
            raise ConfigError("--n or --n-grid is required")
        if any(n < 1 for n in self.n_grid):
            raise ConfigError("orders must be positive")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError("n-grid must be strictly increasing")
        if not 1e-14 <= self.tol <= 1e-6:
            raise ConfigError(f"tol {self.tol} outside [1e-14, 1e-6]")
        if self.fd_step <= 0:
            raise ConfigError("fd-step must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.gamma_kind not in ("alpha", "beta"):
            raise ConfigError("gamma must be 'alpha' or 'beta'")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
