"""Shannon, Rényi and Tsallis entropies of densities and discrete distributions."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import special

from .index_algebra import INF, Index

# |alpha - 1| below this uses the Shannon branch
SHANNON_BAND = 1e-6


def _check_alpha(alpha: Index) -> None:
    if alpha is not INF and not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")


def _is_shannon(alpha: Index) -> bool:
    return alpha is not INF and abs(alpha - 1.0) < SHANNON_BAND


class DiscreteDistribution:
    """Finite probability vector summing to 1 within 1e-12."""

    def __init__(self, probabilities: Sequence[float] | np.ndarray, tol: float = 1e-12):
        p = np.array(probabilities, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a nonempty 1-D sequence")
        if np.any(p < 0) or np.any(p > 1 + tol):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > tol:
            raise ValueError(f"probabilities sum to {p.sum()!r}")
        p.setflags(write=False)
        self.probabilities = p

    def __repr__(self) -> str:
        return f"DiscreteDistribution({self.probabilities.tolist()!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, DiscreteDistribution) and np.array_equal(self.probabilities, other.probabilities)

    def __len__(self) -> int:
        return self.probabilities.size

    def norm(self, alpha: Index) -> float:
        """``(sum q_i^alpha)^(1/alpha)``; ``INF`` gives ``max q_i``."""
        _check_alpha(alpha)
        q = self.probabilities
        if alpha is INF:
            return float(q.max())
        return float(np.sum(q[q > 0] ** alpha)) ** (1.0 / alpha)


def shannon_discrete(q: DiscreteDistribution) -> float:
    p = q.probabilities
    return float(-np.sum(special.xlogy(p, p)))


def renyi_discrete(q: DiscreteDistribution, alpha: Index) -> float:
    """``ln(sum q_i^alpha) / (1 - alpha)``, zero probabilities contribute nothing."""
    _check_alpha(alpha)
    p = q.probabilities
    if alpha is INF:
        return -math.log(p.max())
    if _is_shannon(alpha):
        return shannon_discrete(q)
    nz = p[p > 0]
    return math.log(np.sum(nz**alpha)) / (1.0 - alpha)


def tsallis_discrete(q: DiscreteDistribution, alpha: Index) -> float:
    """``(sum q_i^alpha - 1) / (1 - alpha)``; the ``alpha -> INF`` limit is 0."""
    _check_alpha(alpha)
    if alpha is INF:
        return 0.0
    if _is_shannon(alpha):
        return shannon_discrete(q)
    nz = q.probabilities[q.probabilities > 0]
    return float((np.sum(nz**alpha) - 1.0) / (1.0 - alpha))


def alpha_log(x: float, alpha: Index) -> float:
    """``(x^(1-alpha) - 1) / (1 - alpha)``, equal to ``ln x`` at ``alpha = 1``."""
    if not x > 0:
        raise ValueError(f"alpha_log needs x > 0, got {x!r}")
    _check_alpha(alpha)
    if alpha is INF:
        if x >= 1:
            return 0.0
        return -math.inf
    if _is_shannon(alpha):
        return math.log(x)
    return math.expm1((1.0 - alpha) * math.log(x)) / (1.0 - alpha)


def binary_shannon(eta: float) -> float:
    return float(-special.xlogy(eta, eta) - special.xlogy(1.0 - eta, 1.0 - eta))


def shannon_differential(d) -> float:
    """``-int d ln d`` for any density exposing ``entropy_integral``."""
    return float(d.entropy_integral())


def renyi_differential(d, alpha: Index) -> float:
    """Differential Rényi entropy; may be negative.

    Works for any density exposing ``power_integral`` / ``entropy_integral`` /
    ``supremum`` (:class:`AnalyticDensity`, :class:`GridDensity`,
    :class:`HistogramDensity`).
    """
    _check_alpha(alpha)
    if alpha is INF:
        return -math.log(d.supremum())
    if _is_shannon(alpha):
        return shannon_differential(d)
    return math.log(d.power_integral(alpha)) / (1.0 - alpha)


def gaussian_renyi(variance: float, alpha: Index) -> float:
    """Closed-form Rényi entropy of a normal density."""
    base = 0.5 * math.log(2 * math.pi * variance)
    if alpha is INF:
        return base
    if _is_shannon(alpha):
        return base + 0.5
    return base + math.log(alpha) / (2.0 * (alpha - 1.0))
