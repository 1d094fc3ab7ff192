"""Separability conditions and the characteristic quantities Q_a(z), A(z).

Every check returns a :class:`CriterionReport`; a negative margin means the
input cannot come from a fully separable state.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence

import numpy as np

from .binning import BinGrid, BinnedDistribution, apply_inefficiency, histogram_density, sample_into_bins
from .entropy import binary_shannon, renyi_differential, renyi_discrete, shannon_discrete, tsallis_discrete, alpha_log
from .index_algebra import EntropicIndexPair, SubsystemIndexSet, criterion_bound, pure_state_constant
from .report import ConditionId, CriterionReport
from .states import (
    AntisymCatPure,
    CoherentProduct,
    DephasedCat,
    MarginalPair,
    QuadratureConfig,
    R,
    local_reduced_densities,
    marginal_pair,
    observable_density,
)

# default t values scanned when hunting for a violation
T_SCAN = tuple(round(0.1 * k, 1) for k in range(11))


def _indices(t: float) -> EntropicIndexPair:
    return EntropicIndexPair.from_t(t)


def _ordered(first, second, swapped: bool):
    return (second, first) if swapped else (first, second)


def check_prop1(pair: MarginalPair, n: int, t: float, swapped: bool = False) -> CriterionReport:
    """``H_a(W) + H_b(U) >= ln(n K(t) pi)``, or the twin with W and U exchanged."""
    idx = _indices(t)
    x, y = _ordered(pair.W, pair.U, swapped)
    lhs = renyi_differential(x, idx.a) + renyi_differential(y, idx.b)
    cid = ConditionId.PROP1_TWIN if swapped else ConditionId.PROP1
    return CriterionReport(cid, lhs, criterion_bound(n, t), {"n": n, "t": t})


def check_shannon(pair: MarginalPair, n: int) -> CriterionReport:
    """``H_1(W) + H_1(U) >= ln(n e pi)``."""
    lhs = renyi_differential(pair.W, 1.0) + renyi_differential(pair.U, 1.0)
    return CriterionReport(ConditionId.SHANNON_DIFF, lhs, math.log(n * math.e * math.pi), {"n": n})


def bin_pair(pair: MarginalPair, grids: tuple[BinGrid, BinGrid]) -> tuple[BinnedDistribution, BinnedDistribution]:
    """Bin ``W`` on the first grid and ``U`` on the second."""
    zeta, xi = grids
    return sample_into_bins(pair.W, zeta), sample_into_bins(pair.U, xi)


def _grid_params(p: BinnedDistribution, q: BinnedDistribution) -> dict:
    return {"dzeta": p.grid.max_width, "dxi": q.grid.max_width}


def check_prop2(
    pair: MarginalPair,
    grids: tuple[BinGrid, BinGrid],
    n: int,
    t: float,
    use_histogram: bool = False,
    swapped: bool = False,
) -> CriterionReport:
    """Coarse-grained condition on histogram densities or on bin probabilities.

    ``grids[0]`` bins ``W`` and ``grids[1]`` bins ``U``; ``swapped`` exchanges
    which side carries the index ``a``.
    """
    idx = _indices(t)
    p, q = bin_pair(pair, grids)
    params = {"n": n, "t": t, **_grid_params(p, q)}
    bound = criterion_bound(n, t)
    if use_histogram:
        x, y = _ordered(histogram_density(p), histogram_density(q), swapped)
        lhs = renyi_differential(x, idx.a) + renyi_differential(y, idx.b)
        cid = ConditionId.PROP2_HIST_TWIN if swapped else ConditionId.PROP2_HIST
        return CriterionReport(cid, lhs, bound, params)
    x, y = _ordered(p.probabilities, q.probabilities, swapped)
    lhs = renyi_discrete(x, idx.a) + renyi_discrete(y, idx.b)
    rhs = bound - math.log(p.grid.max_width) - math.log(q.grid.max_width)
    cid = ConditionId.PROP2_BINNED_TWIN if swapped else ConditionId.PROP2_BINNED
    return CriterionReport(cid, lhs, rhs, params)


def check_tsallis(binned: tuple[BinnedDistribution, BinnedDistribution], n: int, t: float, swapped: bool = False) -> CriterionReport:
    """``T_a(p) + T_b(q) >= ln_a(n K pi / (dzeta dxi))`` or its twin."""
    idx = _indices(t)
    p, q = binned
    x, y = _ordered(p.probabilities, q.probabilities, swapped)
    lhs = tsallis_discrete(x, idx.a) + tsallis_discrete(y, idx.b)
    arg = math.exp(criterion_bound(n, t)) / (p.grid.max_width * q.grid.max_width)
    cid = ConditionId.TSALLIS_BINNED_TWIN if swapped else ConditionId.TSALLIS_BINNED
    return CriterionReport(cid, lhs, alpha_log(arg, idx.a), {"n": n, "t": t, **_grid_params(p, q)})


def check_inefficiency(binned: tuple[BinnedDistribution, BinnedDistribution], n: int, eta: float) -> CriterionReport:
    """Shannon condition for lossy detectors with efficiency ``eta``."""
    p, q = binned
    lhs = shannon_discrete(apply_inefficiency(p.probabilities, eta)) + shannon_discrete(
        apply_inefficiency(q.probabilities, eta)
    )
    ratio = n * math.e * math.pi / (p.grid.max_width * q.grid.max_width)
    rhs = eta * math.log(ratio) + 2.0 * binary_shannon(eta)
    return CriterionReport(ConditionId.INEFFICIENCY_SHANNON, lhs, rhs, {"n": n, "eta": eta, **_grid_params(p, q)})


def check_pure(state, config: QuadratureConfig, a: float, n: int | None = None) -> CriterionReport:
    """Pure-state form: ``H_a(W)`` against a constant plus mean local ``H_alpha(w_l)``.

    The local densities are those of the position-side quadrature of each
    one-mode reduced state.
    """
    if not getattr(state, "is_pure", False):
        raise ValueError(f"check_pure needs a pure state, got {state!r}")
    n = state.n if n is None else n
    if n != state.n:
        raise ValueError(f"n={n} does not match the state's {state.n} modes")
    if not a >= 1:
        raise ValueError(f"a must be >= 1, got {a!r}")
    t = 1.0 - 1.0 / a
    sub = SubsystemIndexSet.from_t(n, t)
    lhs = renyi_differential(observable_density(state, config, R), a)
    local = [renyi_differential(pair.W, sub.alpha) for pair in local_reduced_densities(state, config)]
    rhs = pure_state_constant(n, t) + float(np.mean(local))
    return CriterionReport(ConditionId.PURE_STATE, lhs, rhs, {"n": n, "a": a, "alpha": sub.alpha})


def q_characteristic(state: DephasedCat, a: float, config: QuadratureConfig | None = None) -> Callable[[float], float]:
    """``z -> ln(n K pi) - H_a(U) - H_b(W)`` with ``t = 1 - 1/a``.

    ``state`` supplies ``n`` and ``c``; its ``z`` is replaced by the argument.
    Positive values certify entanglement.
    """
    if not a >= 1:
        raise ValueError(f"a must be >= 1, got {a!r}")
    t = 1.0 - 1.0 / a
    cfg = QuadratureConfig.alternating(state.n) if config is None else config

    def q(z: float) -> float:
        pair = marginal_pair(dataclasses.replace(state, z=float(z)), cfg)
        return -check_prop1(pair, state.n, t, swapped=True).margin

    return q


def a_characteristic(state: AntisymCatPure) -> Callable[[float], float]:
    """``z -> (ln n)/2 + mean H_1(w_l) - H_1(W)`` with all-plus signs."""
    cfg = QuadratureConfig.all_plus(state.n)

    def big_a(z: float) -> float:
        return -check_pure(AntisymCatPure(state.n, float(z)), cfg, 1.0).margin

    return big_a


def find_violation(pair: MarginalPair, n: int, ts: Sequence[float] = T_SCAN) -> CriterionReport | None:
    """First Prop1 report (either order) that is violated over a scan of ``t``."""
    for t in ts:
        for swapped in (False, True):
            rep = check_prop1(pair, n, t, swapped)
            if rep.violated:
                return rep
    return None


def positivity_border(zs: Sequence[float], values: Sequence[float]) -> float | None:
    """Smallest ``z`` beyond which the sampled curve stays positive.

    Linearly interpolates the last sign change; ``None`` if the curve is not
    positive at its final sample.
    """
    zs, values = np.asarray(zs, dtype=float), np.asarray(values, dtype=float)
    if zs.shape != values.shape or zs.size == 0:
        raise ValueError("zs and values must be nonempty and of equal length")
    positive = values > 0
    if not positive[-1]:
        return None
    bad = np.flatnonzero(~positive)
    if bad.size == 0:
        return float(zs[0])
    k = bad[-1]
    z0, z1, v0, v1 = zs[k], zs[k + 1], values[k], values[k + 1]
    return float(z0 + (z1 - z0) * (-v0) / (v1 - v0))
