"""A-priori parameter choice: truncation level, admissible shapes, rates.

Given the smoothness of the target class, the noise norm index p and the
output metric, the truncation level grows like
delta**(-1/(mu1 - 1/p + 1/s)) and balances truncation against noise
amplification.  The predicted accuracy exponent and the admissible range of
the cross shape parameter gamma depend on the output metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .hypercross import cardinality
from .model import WienerSpec
from .norms import MetricSpec


@dataclass(frozen=True)
class ProblemSpec:
    """Everything the parameter-choice rules need.

    ``level_constant`` scales the truncation-level rule; rates (log-log
    slopes) do not depend on it, so it defaults to 1 and is exposed as a
    sweep parameter.
    """

    r: int
    wiener: WienerSpec
    noise_p: float
    metric: MetricSpec = field(default_factory=lambda: MetricSpec("l2w"))
    level_constant: float = 1.0

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 1:
            raise ValueError("derivative order r must be an integer >= 1")
        if not self.noise_p >= 1:
            raise ValueError("noise_p must be >= 1 (math.inf allowed)")
        if not self.level_constant > 0:
            raise ValueError("level_constant must be positive")


def _checks(spec: ProblemSpec) -> list[tuple[str, float, float]]:
    s, mu1, mu2 = spec.wiener.s, spec.wiener.mu1, spec.wiener.mu2
    r = spec.r
    kind = spec.metric.kind
    if kind == "l2w":
        return [
            ("mu1 > 2r - 1/s + 1/2", mu1, 2 * r - 1 / s + 0.5),
            ("mu2 > mu1 - 2r", mu2, mu1 - 2 * r),
            ("mu2 > 1/2 - 1/s", mu2, 0.5 - 1 / s),
        ]
    if kind == "sup":
        return [
            ("mu1 > 2r - 1/s + 1", mu1, 2 * r - 1 / s + 1.0),
            ("mu2 > mu1 - 2r", mu2, mu1 - 2 * r),
            ("mu2 > 1 - 1/s", mu2, 1.0 - 1 / s),
        ]
    q = spec.metric.q
    return [
        ("mu1 > 2r - 1/s - 1/q + 1", mu1, 2 * r - 1 / s - 1 / q + 1.0),
        ("mu2 > 1 - 1/s - 1/q", mu2, 1.0 - 1 / s - 1 / q),
    ]


def validate_spec(spec: ProblemSpec) -> list[str]:
    """Check the metric-specific smoothness inequalities.

    Returns an empty list when the parameters are admissible, otherwise one
    message per violated inequality, naming it and the required bound.
    """
    return [
        f"{name} violated (need > {bound:.6g}, got {value:.6g})"
        for name, value, bound in _checks(spec)
        if not value > bound
    ]


def _require_valid(spec: ProblemSpec) -> None:
    violations = validate_spec(spec)
    if violations:
        raise ValueError("inadmissible problem spec: " + "; ".join(violations))


def choose_n(delta: float, spec: ProblemSpec) -> int:
    """Truncation level for noise level delta, floored at r.

    Follows level_constant * delta**(-1/(mu1 - 1/p + 1/s)), rounded to the
    nearest integer.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    _require_valid(spec)
    inv_p = 0.0 if math.isinf(spec.noise_p) else 1.0 / spec.noise_p
    exponent = 1.0 / (spec.wiener.mu1 - inv_p + 1.0 / spec.wiener.s)
    return max(spec.r, round(spec.level_constant * delta ** -exponent))


def gamma_range(spec: ProblemSpec) -> tuple[float, float]:
    """Half-open admissible interval [1, gamma_max) of the cross shape.

    The interval is empty when gamma_max <= 1; callers must treat that as a
    configuration error.
    """
    _require_valid(spec)
    s, mu1, mu2 = spec.wiener.s, spec.wiener.mu1, spec.wiener.mu2
    r = spec.r
    kind = spec.metric.kind
    if kind == "l2w":
        shift = 1.0 / s - 0.5
    elif kind == "sup":
        shift = 1.0 / s - 1.0
    else:
        shift = 1.0 / s + 1.0 / spec.metric.q - 1.0
    return (1.0, (mu2 + shift) / (mu1 - 2 * r + shift))


def gamma_admissible(spec: ProblemSpec, gamma: float) -> bool:
    low, high = gamma_range(spec)
    return low <= gamma < high


def theoretical_rate(spec: ProblemSpec) -> float:
    """Predicted exponent of delta in the accuracy bound for this metric."""
    _require_valid(spec)
    s, mu1 = spec.wiener.s, spec.wiener.mu1
    r = spec.r
    kind = spec.metric.kind
    if kind == "l2w":
        numer = mu1 - 2 * r + 1.0 / s - 0.5
    elif kind == "sup":
        numer = mu1 - 2 * r + 1.0 / s - 1.0
    else:
        numer = mu1 - 2 * r + 1.0 / s + 1.0 / spec.metric.q - 1.0
    inv_p = 0.0 if math.isinf(spec.noise_p) else 1.0 / spec.noise_p
    return numer / (mu1 - inv_p + 1.0 / s)


def expected_cardinality(delta: float, spec: ProblemSpec, gamma: float) -> int:
    """Data budget of the method: cross cardinality at the chosen level."""
    if not gamma_admissible(spec, gamma):
        raise ValueError(f"gamma={gamma} outside admissible range "
                         f"{gamma_range(spec)}")
    return cardinality(choose_n(delta, spec), gamma, spec.r)


def with_metric(spec: ProblemSpec, metric: MetricSpec) -> ProblemSpec:
    """Copy of the problem parameters targeting a different output metric."""
    return replace(spec, metric=metric)
