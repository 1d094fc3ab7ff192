"""Seeded self-checks of the inequalities and identities the criteria rest on.

Each suite returns a :class:`SuiteResult`; ``run_all`` is what the ``validate``
subcommand prints. A suite's ``worst`` is its smallest slack (negative means a
violation beyond the tolerance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import index_algebra as ia
from . import quadrature
from .binning import BinGrid, apply_inefficiency, histogram_density, sample_into_bins
from .criteria import check_inefficiency, bin_pair
from .density import AnalyticDensity, convolve_many, fourier_pair_check, gaussian_mixture, lp_functional
from .entropy import DiscreteDistribution, binary_shannon, shannon_discrete
from .fock import max_marginal_error
from .report import format_number
from .states import AntisymCatPure, CoherentProduct, DephasedCat, QuadratureConfig, marginal_pair

TOL = 1e-9
DEFAULT_SEED = 20160917


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    cases: int
    worst: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} cases={self.cases} worst={format_number(self.worst)}"


def _result(name: str, slacks: list[float], tol: float = TOL) -> SuiteResult:
    worst = min(slacks)
    return SuiteResult(name, worst >= -tol, len(slacks), worst)


def random_mixture(rng: np.random.Generator, max_components: int = 3) -> AnalyticDensity:
    k = int(rng.integers(1, max_components + 1))
    return gaussian_mixture(rng.dirichlet(np.ones(k)), rng.uniform(-3.0, 3.0, k), rng.uniform(0.2, 2.0, k))


def constants_suite(rng=None) -> SuiteResult:
    """Endpoint values of the criterion constant and the constant identity."""
    slacks = [-abs(ia.big_K(0.0) - math.e), -abs(ia.big_K(1.0) - 2.0)]
    for n in range(2, 11):
        for k in range(1, 20):
            slacks.append(-abs(ia.constant_identity_check(n, 0.05 * k)))
    return _result("constants", slacks, tol=1e-9)


def _split_reciprocals(rng: np.random.Generator, n: int) -> np.ndarray:
    """Positive ``s_l`` with ``sum s_l < 1``."""
    return rng.dirichlet(np.ones(n + 1))[:n] * rng.uniform(0.2, 0.95)


def young_suite(rng: np.random.Generator, cases: int = 200) -> SuiteResult:
    """``C(a) ||f_1 * ... * f_n||_a <= prod C(a_l) ||f_l||_{a_l}``, indices with ``a_l >= 1``."""
    slacks = []
    for _ in range(cases):
        n = int(rng.integers(2, 4))
        s = _split_reciprocals(rng, n)
        idx = [1.0 / (1.0 - x) for x in s]
        a = 1.0 / (1.0 - s.sum())
        fs = [random_mixture(rng) for _ in range(n)]
        lhs = math.log(ia.young_C(a)) + math.log(lp_functional(convolve_many(fs), a))
        rhs = sum(math.log(ia.young_C(x)) + math.log(lp_functional(f, x)) for f, x in zip(fs, idx))
        slacks.append(rhs - lhs)
    return _result("young", slacks)


def converse_young_suite(rng: np.random.Generator, cases: int = 200) -> SuiteResult:
    """``prod C(b_l) ||f_l||_{b_l} <= C(b) ||f_1 * ... * f_n||_b`` with ``0 < b_l <= 1``."""
    slacks = []
    for _ in range(cases):
        n = int(rng.integers(2, 4))
        s = _split_reciprocals(rng, n)
        idx = [1.0 / (1.0 + x) for x in s]
        b = 1.0 / (1.0 + s.sum())
        fs = [random_mixture(rng) for _ in range(n)]
        lhs = sum(math.log(ia.young_C(x)) + math.log(lp_functional(f, x)) for f, x in zip(fs, idx))
        rhs = math.log(ia.young_C(b)) + math.log(lp_functional(convolve_many(fs), b))
        slacks.append(rhs - lhs)
    return _result("converse_young", slacks)


def hausdorff_young_suite(rng: np.random.Generator, cases: int = 200) -> SuiteResult:
    """Sharp position/momentum norm bound on Hermite densities and their mixtures, ``k <= 5``."""
    slacks = []
    for _ in range(cases):
        beta = rng.uniform(0.5, 1.0)
        alpha = 1.0 / (2.0 - 1.0 / beta)
        if rng.random() < 0.5:
            spec = int(rng.integers(0, 6))
        else:
            ks = rng.choice(6, size=int(rng.integers(2, 4)), replace=False)
            spec = dict(zip(ks.tolist(), rng.dirichlet(np.ones(ks.size)).tolist()))
        slacks.append(fourier_pair_check(spec, alpha, beta).margin)
    return _result("hausdorff_young", slacks)


def _random_grid(rng: np.random.Generator, d: AnalyticDensity) -> BinGrid:
    width = rng.uniform(0.05, 1.0)
    if rng.random() < 0.5:
        return BinGrid.covering(d, width)
    lo, hi = d.support()
    marks = [lo - rng.uniform(0, width)]
    while marks[-1] < hi:
        marks.append(marks[-1] + rng.uniform(0.3, 1.0) * width)
    return BinGrid(marks)


def _random_indices(rng: np.random.Generator) -> tuple[float, float]:
    return rng.uniform(1.05, 4.0), rng.uniform(0.3, 0.95)


def binning_chain_suite(rng: np.random.Generator, cases: int = 200) -> SuiteResult:
    """Coarse-graining chains for ``a > 1`` (raises) and ``b < 1`` (lowers), in log form."""
    slacks = []
    for _ in range(cases):
        w, u = random_mixture(rng), random_mixture(rng)
        a, b = _random_indices(rng)
        bw, bu = sample_into_bins(w, _random_grid(rng, w)), sample_into_bins(u, _random_grid(rng, u))
        dz, dx = bw.grid.max_width, bu.grid.max_width
        p, q = bw.probabilities.probabilities, bu.probabilities.probabilities
        low_a = math.log(dz ** (1 - a) * np.sum(p[p > 0] ** a))
        mid_a = math.log(histogram_density(bw).power_integral(a))
        top_a = math.log(w.power_integral(a))
        low_b = math.log(u.power_integral(b))
        mid_b = math.log(histogram_density(bu).power_integral(b))
        top_b = math.log(dx ** (1 - b) * np.sum(q[q > 0] ** b))
        slacks += [mid_a - low_a, top_a - mid_a, mid_b - low_b, top_b - mid_b]
    return _result("binning_chains", slacks)


def per_bin_suite(rng: np.random.Generator, cases: int = 200) -> SuiteResult:
    """Bin-by-bin Jensen bounds, as relative slack per bin."""
    slacks = []
    for _ in range(cases):
        d = random_mixture(rng)
        a, b = _random_indices(rng)
        grid = _random_grid(rng, d)
        h = 0.5 * d.resolution()
        widths = grid.widths
        p = quadrature.refine_bins(lambda x: d(x), grid.marks, h)
        pa = quadrature.refine_bins(lambda x: d(x) ** a, grid.marks, h)
        pb = quadrature.refine_bins(lambda x: d(x) ** b, grid.marks, h)
        low = widths ** (1 - a) * p**a
        high = widths ** (1 - b) * p**b
        scale_a = np.maximum(pa, 1e-300)
        scale_b = np.maximum(high, 1e-300)
        keep = p > 1e-200
        slacks.append(float(np.min(((pa - low) / scale_a)[keep])))
        slacks.append(float(np.min(((high - pb) / scale_b)[keep])))
    return _result("per_bin", slacks)


def inefficiency_suite(rng: np.random.Generator, cases: int = 100) -> SuiteResult:
    """Shannon loss identity on random distributions, and the lossy bound on separable inputs."""
    slacks = []
    etas = [round(0.1 * k, 1) for k in range(1, 10)]
    for _ in range(cases):
        q = DiscreteDistribution(rng.dirichlet(np.ones(int(rng.integers(2, 30)))))
        h = shannon_discrete(q)
        for eta in etas:
            gap = shannon_discrete(apply_inefficiency(q, eta)) - (eta * h + binary_shannon(eta))
            slacks.append(-abs(gap) * 1e3)  # identity is held to 1e-12
    for _ in range(10):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        pair = marginal_pair(CoherentProduct(tuple(z)), QuadratureConfig(2, tuple(rng.uniform(0, math.pi, 2))))
        width = rng.uniform(0.05, 0.5)
        binned = bin_pair(pair, (BinGrid.covering(pair.W, width), BinGrid.covering(pair.U, width)))
        for eta in etas:
            slacks.append(check_inefficiency(binned, 2, eta).margin)
    return _result("inefficiency", slacks)


def oracle_cases():
    return [
        (CoherentProduct((0.3 + 0.7j, -1.1 + 0.2j)), QuadratureConfig(2, (0.4, 1.3), (1, -1), (-1, 1))),
        (DephasedCat(2, 1.3, 0.5), QuadratureConfig.alternating(2)),
        (AntisymCatPure(2, 0.9), QuadratureConfig.all_plus(2)),
    ]


def oracle_suite(rng=None) -> SuiteResult:
    """Closed-form two-mode marginals against brute-force number-basis integration."""
    x = np.linspace(-6.0, 6.0, 49)
    errors = [max_marginal_error(state, cfg, x) for state, cfg in oracle_cases()]
    # slack relative to the 1e-6 budget, reported on the TOL scale
    return _result("oracle", [1e-6 - e for e in errors], tol=0.0)


SUITES: dict[str, Callable] = {
    "constants": constants_suite,
    "young": young_suite,
    "converse_young": converse_young_suite,
    "hausdorff_young": hausdorff_young_suite,
    "binning_chains": binning_chain_suite,
    "per_bin": per_bin_suite,
    "inefficiency": inefficiency_suite,
    "oracle": oracle_suite,
}


def run_all(seed: int = DEFAULT_SEED, names=None) -> list[SuiteResult]:
    """Run suites in a fixed order, each with its own generator derived from ``seed``."""
    out = []
    for k, (name, fn) in enumerate(SUITES.items()):
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng([seed, k])
        out.append(fn(rng))
    return out
