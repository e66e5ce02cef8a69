"""Error metrics for coefficient grids.

Three output metrics are supported: the weighted L2 norm (exact through the
coefficients), weighted Lq norms approximated by tensor Gauss-Chebyshev
quadrature, and a grid surrogate for the uniform norm.  The module also
provides the coefficient-weighted Lq upper-bound functional and the
explicit-constant polynomial sup/L2 comparison bound.

Metric selection strings (CLI and config): ``l2w``, ``lqw:<q>``, ``sup``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import gauss_chebyshev_rule
from .hypercross import underline
from .transform import CoeffGrid, grid_synthesize


@dataclass(frozen=True)
class MetricSpec:
    """Which norm to report and how finely to evaluate it.

    ``eval_grid`` is the number of points per dimension for the uniform
    surrogate; for Lq it is a floor on the quadrature size (the actual size
    also grows with the polynomial degree, see :func:`lq_omega_norm`).
    """

    kind: str  # "l2w" | "lqw" | "sup"
    q: float | None = None
    eval_grid: int = 257

    def __post_init__(self):
        if self.kind not in ("l2w", "lqw", "sup"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "lqw":
            if self.q is None or not self.q >= 2:
                raise ValueError("Lq metric requires q >= 2")
        elif self.q is not None:
            raise ValueError(f"metric {self.kind!r} takes no q parameter")
        if self.eval_grid < 2:
            raise ValueError("eval_grid must be at least 2")

    @property
    def label(self) -> str:
        if self.kind == "lqw":
            return f"lqw:{self.q:g}"
        return self.kind


def parse_metric(text: str, eval_grid: int = 257) -> MetricSpec:
    """Parse ``l2w``, ``lqw:<q>`` or ``sup`` into a MetricSpec."""
    text = text.strip()
    if text == "l2w":
        return MetricSpec("l2w", eval_grid=eval_grid)
    if text == "sup":
        return MetricSpec("sup", eval_grid=eval_grid)
    if text.startswith("lqw:"):
        return MetricSpec("lqw", q=float(text[4:]), eval_grid=eval_grid)
    raise ValueError(f"unknown metric {text!r} (expected l2w, lqw:<q>, sup)")


def l2_omega_norm(coeffs: CoeffGrid) -> float:
    """Weighted L2 norm, exact through the coefficients (Parseval)."""
    return math.sqrt(math.fsum(v * v for _, v in coeffs.items()))


def lq_omega_norm(coeffs: CoeffGrid, q: float, quad_n: int | None = None) -> float:
    """Weighted Lq norm by tensor Gauss-Chebyshev quadrature.

    Default quadrature size 4 * (max degree) + 1 per dimension, which is
    exact for even integer q up to 8; for other q the integrand is not a
    polynomial and the result is an approximation.
    """
    if not q >= 1:
        raise ValueError("q must be >= 1")
    max_deg = max(coeffs.max_k, coeffs.max_j)
    if quad_n is None:
        quad_n = 4 * max_deg + 1
    if quad_n < max_deg + 1:
        raise ValueError("quad_n must be at least max degree + 1")
    rule = gauss_chebyshev_rule(quad_n)
    values = grid_synthesize(coeffs, rule.nodes, rule.nodes)
    w = math.pi / quad_n
    return float((w * w * np.sum(np.abs(values) ** q)) ** (1.0 / q))


def cosine_grid(points_per_dim: int) -> np.ndarray:
    """Endpoint-including evaluation nodes cos(i*pi/(M-1)), i = 0..M-1."""
    if points_per_dim < 2:
        raise ValueError("need at least 2 points per dimension")
    return np.cos(np.arange(points_per_dim) * math.pi / (points_per_dim - 1))


def sup_norm(coeffs: CoeffGrid, points_per_dim: int = 257) -> float:
    """Uniform-norm surrogate: max |value| on an M x M cosine tensor grid.

    The grid includes the corners (+-1, +-1), where polynomial sums peak;
    the grid maximum underestimates the true sup by an amount controlled by
    M relative to the polynomial degrees.
    """
    nodes = cosine_grid(points_per_dim)
    return float(np.abs(grid_synthesize(coeffs, nodes, nodes)).max())


def lq_coefficient_bound(coeffs: CoeffGrid, q: float) -> float:
    """Coefficient-weighted upper-bound functional for the Lq norm.

    Returns (sum (max(1,k)*max(1,j))**(1 - 2/q) * a^2)^(1/2); at q = 2 this
    is exactly the L2 norm.  The Lq norm is bounded by a constant multiple
    of this quantity for 2 <= q < infinity.
    """
    if not 2 <= q < math.inf:
        raise ValueError("q must lie in [2, inf)")
    expo = 1.0 - 2.0 / q
    total = math.fsum(
        (underline(k) * underline(j)) ** expo * v * v for (k, j), v in coeffs.items()
    )
    return math.sqrt(total)


def nikolskii_explicit_bound(max_k: int, max_j: int) -> float:
    """Explicit constant in the sup vs weighted-L2 comparison.

    For any polynomial of coordinate degrees (max_k, max_j) the sup norm is
    at most (2/pi) * sqrt((max_k + 1) * (max_j + 1)) times its weighted L2
    norm.
    """
    if max_k < 0 or max_j < 0:
        raise ValueError("degrees must be nonnegative")
    return (2.0 / math.pi) * math.sqrt((max_k + 1) * (max_j + 1))


def evaluate_metric(coeffs: CoeffGrid, metric: MetricSpec) -> float:
    """Evaluate one of the three output metrics on a coefficient grid."""
    if metric.kind == "l2w":
        return l2_omega_norm(coeffs)
    if metric.kind == "sup":
        return sup_norm(coeffs, metric.eval_grid)
    max_deg = max(coeffs.max_k, coeffs.max_j)
    quad_n = max(metric.eval_grid, 4 * max_deg + 1)
    return lq_omega_norm(coeffs, metric.q, quad_n)
