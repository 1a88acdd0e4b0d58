"""
Singular-Endpoint Quadrature on the Unit Circle

The circle is cut at every singular angle theta_j into arcs. Each arc carries a
fixed number of Gauss-Legendre panels; a panel touching an endpoint with a root
singularity (alpha_j != 0) is replaced by a tanh-sinh panel, which clusters the
nodes double-exponentially at both of its ends and integrates |theta - theta_j|^{2 alpha}
for any Re(alpha) > -1/2.

Every node remembers its distances to the two ends of its arc. Offsets
theta - theta_j are built from those distances, so |z - z_j| is known to full
relative accuracy even at nodes 1e-100 away from z_j.
"""

from dataclasses import dataclass
from functools import lru_cache
import logging

import numpy as np
import scipy.special

from fh_structs import FhSymbol, TWO_PI
from fh_symbol import log_symbol

logger = logging.getLogger(__name__)

GAUSS_ORDER = 16
DE_STEP = 1.0 / 16.0
DE_T_MAX = 5.0      # tanh-sinh nodes reach within ~1e-101 of a panel end


@dataclass(frozen=True)
class CircleRule:
    """
    Nodes and weights for integrals d(theta) over [0, 2*pi).

    Attributes:
        theta (np.ndarray): Node angles
        weights (np.ndarray): Weights, summing to 2*pi
        offsets (np.ndarray): Shape (m + 1, N), theta - theta_j modulo 2*pi, accurate near theta_j
        arc (np.ndarray): Arc index of every node
        tail (np.ndarray): Mask of the outermost tanh-sinh nodes (truncation monitor)
        panels (int): Panels per arc
        step (float): tanh-sinh step
    """
    theta: np.ndarray
    weights: np.ndarray
    offsets: np.ndarray
    arc: np.ndarray
    tail: np.ndarray
    panels: int
    step: float

    @property
    def size(self) -> int:
        return int(self.theta.size)

    @property
    def z(self) -> np.ndarray:
        return np.exp(1j * self.theta)

    def log_of(self, sym: FhSymbol) -> np.ndarray:
        """ln f at the nodes."""
        return log_symbol(sym, self.theta, self.offsets, self.arc)

    def integrate(self, values) -> complex:
        """sum_k w_k v_k, i.e. the integral of v over d(theta)."""
        return complex(np.dot(self.weights, values))

    def tail_size(self, values) -> float:
        """Magnitude of the weighted integrand at the truncation points."""
        return float(np.sum(np.abs(self.weights[self.tail] * np.asarray(values)[self.tail])))


@lru_cache(maxsize=8)
def _gauss_reference(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre on [0, 1]: fractional positions and weights."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (1.0 + x), 0.5 * w


@lru_cache(maxsize=8)
def _tanh_sinh_reference(step: float, t_max: float):
    """
    tanh-sinh on [0, 1]: distances to the left and right end, weights, tail mask.

    x = (1 + tanh(s)) / 2 with s = (pi/2) sinh(t); the distances are written with
    expit so that neither end loses relative accuracy.
    """
    count = int(round(t_max / step))
    t = step * np.arange(-count, count + 1)
    s = 0.5 * np.pi * np.sinh(t)
    from_left = scipy.special.expit(2.0 * s)
    from_right = scipy.special.expit(-2.0 * s)
    weights = step * np.pi * np.cosh(t) * from_left * from_right
    tail = np.zeros(t.size, dtype=bool)
    tail[[0, -1]] = True
    return from_left, from_right, weights, tail


def _arc_nodes(length: float, panels: int, order: int, step: float, t_max: float,
               cluster_left: bool, cluster_right: bool):
    """Distances from both arc ends, weights and tail mask for one arc."""
    width = length / panels
    g_pos, g_w = _gauss_reference(order)
    de_left, de_right, de_w, de_tail = _tanh_sinh_reference(step, t_max)

    dl, dr, w, tail = [], [], [], []
    for i in range(panels):
        clustered = (i == 0 and cluster_left) or (i == panels - 1 and cluster_right)
        if clustered:
            left, right, weights, mask = de_left, de_right, de_w, de_tail
        else:
            left, right, weights, mask = g_pos, 1.0 - g_pos, g_w, np.zeros(order, dtype=bool)
        dl.append(width * (i + left))
        dr.append(width * (panels - 1 - i + right))
        w.append(width * weights)
        tail.append(mask)
    return np.concatenate(dl), np.concatenate(dr), np.concatenate(w), np.concatenate(tail)


def build_circle_rule(sym: FhSymbol, panels: int, *, order: int = GAUSS_ORDER,
                      step: float = DE_STEP, t_max: float = DE_T_MAX,
                      cluster: np.ndarray | None = None) -> CircleRule:
    """
    Build the composite rule for a symbol's singular angles.

    Args:
        sym (FhSymbol): Symbol providing the cut points theta_j
        panels (int): Panels per arc
        order (int): Gauss-Legendre order of a regular panel
        step (float): tanh-sinh step
        t_max (float): tanh-sinh truncation
        cluster (np.ndarray, optional): Per singularity, whether its adjacent panels are
            clustered; defaults to alpha_j != 0

    Returns:
        CircleRule: The assembled rule
    """
    panels = max(1, int(panels))
    thetas = sym.thetas
    count = thetas.size
    if cluster is None:
        cluster = sym.alphas != 0
    bounds = np.append(thetas, TWO_PI)

    parts = []
    for a in range(count):
        right_index = (a + 1) % count
        dl, dr, w, tail = _arc_nodes(bounds[a + 1] - bounds[a], panels, order, step, t_max,
                                     bool(cluster[a]), bool(cluster[right_index]))
        theta = np.where(dl <= dr, bounds[a] + dl, bounds[a + 1] - dr)
        offsets = theta[None, :] - thetas[:, None]
        if right_index == a:
            offsets[a] = np.where(dl <= dr, dl, -dr)
        else:
            offsets[a] = dl
            offsets[right_index] = -dr
        parts.append((theta, w, offsets, np.full(theta.size, a), tail))

    rule = CircleRule(
        theta=np.concatenate([p[0] for p in parts]),
        weights=np.concatenate([p[1] for p in parts]),
        offsets=np.concatenate([p[2] for p in parts], axis=1),
        arc=np.concatenate([p[3] for p in parts]),
        tail=np.concatenate([p[4] for p in parts]),
        panels=panels,
        step=step,
    )
    logger.debug("circle rule: %d arcs x %d panels, %d nodes", count, panels, rule.size)
    return rule
