"""Sampling densities into bins, histogram reconstruction, detector losses."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .density import AnalyticDensity, GridDensity
from .entropy import DiscreteDistribution

# mass allowed outside the outermost marks
TAIL_TOL = 1e-10


class CoverageError(ValueError):
    """The bin grid misses more than ``TAIL_TOL`` of the density's mass."""


class BinGrid:
    """Strictly increasing marks; bin ``j`` is ``[marks[j], marks[j+1]]``."""

    def __init__(self, marks):
        marks = np.array(marks, dtype=float)
        if marks.ndim != 1 or marks.size < 2:
            raise ValueError("a bin grid needs at least two marks")
        if np.any(np.diff(marks) <= 0):
            raise ValueError("marks must be strictly increasing")
        marks.setflags(write=False)
        self.marks = marks

    @classmethod
    def uniform(cls, lo: float, hi: float, count: int) -> "BinGrid":
        if count < 1 or not hi > lo:
            raise ValueError(f"bad uniform grid spec lo={lo}, hi={hi}, count={count}")
        return cls(np.linspace(lo, hi, int(count) + 1))

    @classmethod
    def covering(cls, d, width: float) -> "BinGrid":
        """Uniform bins of ``width`` aligned to multiples of ``width``, covering ``d``."""
        if not width > 0:
            raise ValueError(f"width must be > 0, got {width!r}")
        lo, hi = d.support()
        i0, i1 = math.floor(lo / width), math.ceil(hi / width)
        return cls(np.arange(i0, i1 + 1) * width)

    def __repr__(self) -> str:
        return f"BinGrid([{self.marks[0]:g} .. {self.marks[-1]:g}], {self.count} bins, max_width={self.max_width:g})"

    def __eq__(self, other) -> bool:
        return isinstance(other, BinGrid) and np.array_equal(self.marks, other.marks)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.marks)

    @property
    def max_width(self) -> float:
        return float(self.widths.max())

    @property
    def count(self) -> int:
        return self.marks.size - 1


@dataclass(frozen=True)
class BinnedDistribution:
    grid: BinGrid
    probabilities: DiscreteDistribution


@dataclass(frozen=True)
class HistogramDensity:
    """Piecewise-constant density with height ``p_j / width_j`` on bin ``j``."""

    grid: BinGrid
    heights: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        j = np.searchsorted(self.grid.marks, x, side="right") - 1
        inside = (j >= 0) & (j < self.grid.count)
        out = np.zeros(x.shape)
        out[inside] = self.heights[j[inside]]
        return out

    def _mass(self) -> np.ndarray:
        return self.heights * self.grid.widths

    def power_integral(self, alpha: float) -> float:
        """``sum width_j^(1-alpha) p_j^alpha``, exact for a histogram."""
        if not alpha > 0:
            raise ValueError(f"alpha must be > 0, got {alpha!r}")
        p, w = self._mass(), self.grid.widths
        nz = p > 0
        return float(np.sum(w[nz] ** (1.0 - alpha) * p[nz] ** alpha))

    def entropy_integral(self) -> float:
        p, w = self._mass(), self.grid.widths
        nz = p > 0
        return float(-np.sum(p[nz] * np.log(p[nz] / w[nz])))

    def supremum(self) -> float:
        return float(self.heights.max())


def _grid_cdf(g: GridDensity, x: np.ndarray) -> np.ndarray:
    """Exact CDF of the piecewise-linear interpolant of ``g``."""
    v, h = g.values, g.spacing
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * h)))
    u = (np.asarray(x, dtype=float) - g.left_edge) / h
    k = np.clip(np.floor(u).astype(np.int64), 0, v.size - 2)
    frac = np.clip(u - k, 0.0, 1.0)
    out = cum[k] + h * (v[k] * frac + 0.5 * (v[k + 1] - v[k]) * frac**2)
    out = np.where(u <= 0, 0.0, out)
    return np.where(u >= v.size - 1, cum[-1], out)


def sample_into_bins(d, grid: BinGrid) -> BinnedDistribution:
    """Integrate ``d`` over every bin.

    Raises :class:`CoverageError` when the bins capture less than
    ``1 - TAIL_TOL`` of the mass; the residual is never folded into edge bins.
    """
    if isinstance(d, GridDensity):
        cdf = _grid_cdf(d, grid.marks)
        p = np.diff(cdf)
    elif isinstance(d, AnalyticDensity):
        p = quadrature.refine_bins(lambda x: d(x), grid.marks, 0.5 * d.resolution())
    else:
        p = quadrature.refine_bins(lambda x: d(x), grid.marks, 0.05)
    p = np.maximum(p, 0.0)
    deficit = 1.0 - float(p.sum())
    if abs(deficit) > TAIL_TOL:
        raise CoverageError(f"bins capture mass {1.0 - deficit!r}; grid {grid!r} does not cover the density")
    return BinnedDistribution(grid, DiscreteDistribution(p / p.sum()))


def histogram_density(b: BinnedDistribution) -> HistogramDensity:
    heights = b.probabilities.probabilities / b.grid.widths
    heights.setflags(write=False)
    return HistogramDensity(b.grid, heights)


def apply_inefficiency(q: DiscreteDistribution, eta: float) -> DiscreteDistribution:
    """Scale every outcome by ``eta`` and append a no-click outcome ``1 - eta``."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    return DiscreteDistribution(np.append(eta * q.probabilities, 1.0 - eta))
