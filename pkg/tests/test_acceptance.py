"""The ten acceptance criteria, one test each, at their stated tolerances.

Each test records a ``AC<k> PASS|FAIL`` line; the lines are printed in the
terminal summary (see ``conftest.py``) and when this file is run directly.
"""

import math
import time

import numpy as np
import pytest

from cvrenyi import fock, index_algebra as ia, validation
from cvrenyi.binning import BinGrid
from cvrenyi.criteria import a_characteristic, check_prop1, check_prop2, check_inefficiency, bin_pair, positivity_border
from cvrenyi.entropy import DiscreteDistribution, binary_shannon, shannon_discrete
from cvrenyi.binning import apply_inefficiency
from cvrenyi.figures import a_grid, q_figure
from cvrenyi.states import AntisymCatPure, CoherentProduct, QuadratureConfig, marginal_pair

LINES: dict[int, str] = {}


def record(k: int, ok: bool, detail: str, elapsed: float, limit: float) -> None:
    ok = ok and elapsed < limit
    LINES[k] = f"AC{k:<2} {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.2f}s < {limit:g}s]"
    assert ok, LINES[k]


def borders(data):
    return {name: positivity_border(data.z, values) for name, values in data.curves.items()}


@pytest.fixture(scope="module")
def fig1():
    return q_figure(4)


def test_ac1_constant_stack():
    start = time.perf_counter()
    endpoints = max(abs(ia.big_K(0.0) - math.e), abs(ia.big_K(1.0) - 2.0))
    residual = max(abs(ia.constant_identity_check(n, 0.05 * k)) for n in range(2, 11) for k in range(1, 20))
    ok = endpoints < 1e-12 and residual < 1e-9
    record(1, ok, f"endpoint error {endpoints:.1e}, identity residual {residual:.1e}", time.perf_counter() - start, 1.0)


def test_ac2_shannon_bound():
    start = time.perf_counter()
    pair = marginal_pair(CoherentProduct((0, 0)), QuadratureConfig.all_plus(2))
    lhs = check_prop1(pair, 2, 0.0).lhs
    gap = abs(lhs - math.log(2 * math.e * math.pi))
    record(2, gap < 1e-8, f"lhs {lhs:.9f} vs ln(2e pi), gap {gap:.1e}", time.perf_counter() - start, 1.0)


def test_ac3_gaussian_saturation():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for n in (2, 4, 10):
        states = [CoherentProduct((0,) * n)] + [CoherentProduct(tuple(rng.normal(0, 2, n) + 1j * rng.normal(0, 2, n))) for _ in range(2)]
        for state in states:
            cfg = QuadratureConfig(n, tuple(rng.uniform(0, 2 * math.pi, n)), tuple(rng.choice([-1, 1], n)), tuple(rng.choice([-1, 1], n)))
            pair = marginal_pair(state, cfg)
            for k in range(20):
                worst = max(worst, abs(check_prop1(pair, n, 0.05 * k).margin))
    record(3, worst < 1e-8, f"max |margin| {worst:.1e} over 9 states x 20 t", time.perf_counter() - start, 10.0)


def test_ac4_figure1():
    start = time.perf_counter()
    data = q_figure(4)
    end = {name: values[-1] for name, values in data.curves.items()}
    z_star = borders(data)
    ratio = end["Q_5"] / end["Q_1"]
    ok = all(v > 0 for v in end.values()) and ratio > 3 and z_star["Q_1"] <= z_star["Q_5"] and z_star["Q_5"] - z_star["Q_1"] < 0.3
    detail = f"Q_5(4)/Q_1(4) = {ratio:.3f}, z*(1) = {z_star['Q_1']:.3f}, z*(5) = {z_star['Q_5']:.3f}"
    record(4, ok, detail, time.perf_counter() - start, 120.0)


def test_ac5_figure2(fig1):
    start = time.perf_counter()
    data = q_figure(10)
    end = {name: values[-1] for name, values in data.curves.items()}
    z10, z4 = borders(data), borders(fig1)
    ratio = end["Q_5"] / end["Q_1"]
    left = all(z10[k] < z4[k] for k in z4)
    ok = all(v > 0 for v in end.values()) and ratio > 3 and z10["Q_1"] <= z10["Q_5"] and z10["Q_5"] - z10["Q_1"] < 0.3 and left
    detail = f"ratio {ratio:.3f}, z*(n=10) = {[round(z10[k], 3) for k in z10]} vs n=4 {[round(z4[k], 3) for k in z4]}"
    record(5, ok, detail, time.perf_counter() - start, 120.0)


def test_ac6_figure3():
    start = time.perf_counter()
    zs = a_grid()
    near, z_star = {}, {}
    for n in (2, 4, 6, 8):
        big_a = a_characteristic(AntisymCatPure(n, 1.0))
        near[n] = abs(big_a(3.0) - math.log(2))
        z_star[n] = positivity_border(zs, [big_a(z) for z in zs])
    values = [z_star[n] for n in (2, 4, 6, 8)]
    decreasing = None not in values and all(x > y for x, y in zip(values, values[1:]))
    ok = max(near.values()) < 1e-2 and decreasing
    interior = [v for v in values if v is not None and v > zs[0]]
    shape = "borders " + str([round(v, 3) for v in values]) if interior else "no sign change on (0, 1.6] for any n, so no border to order"
    detail = f"max |A(3) - ln 2| = {max(near.values()):.1e}; {shape}"
    record(6, ok, detail, time.perf_counter() - start, 60.0)


def test_ac7_oracle_equivalence():
    start = time.perf_counter()
    x = np.linspace(-6.0, 6.0, 49)
    worst = max(fock.max_marginal_error(state, cfg, x) for state, cfg in validation.oracle_cases())
    record(7, worst < 1e-6, f"max abs error {worst:.1e} over W, U and local densities", time.perf_counter() - start, 60.0)


def test_ac8_fuzz_suites():
    start = time.perf_counter()
    names = {"young", "converse_young", "hausdorff_young", "binning_chains", "per_bin"}
    results = validation.run_all(validation.DEFAULT_SEED, names)
    ok = len(results) == 5 and all(r.passed and r.cases >= 200 for r in results)
    detail = ", ".join(f"{r.name} {r.worst:.1e}" for r in results)
    record(8, ok, f"worst slack: {detail}", time.perf_counter() - start, 120.0)


def test_ac9_inefficiency():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    gap = 0.0
    etas = [0.1 * k for k in range(1, 10)]
    for _ in range(100):
        q = DiscreteDistribution(rng.dirichlet(np.ones(int(rng.integers(2, 50)))))
        h = shannon_discrete(q)
        for eta in etas:
            gap = max(gap, abs(shannon_discrete(apply_inefficiency(q, eta)) - eta * h - binary_shannon(eta)))
    worst = math.inf
    for _ in range(10):
        n = int(rng.integers(2, 5))
        pair = marginal_pair(CoherentProduct(tuple(rng.normal(size=n) + 1j * rng.normal(size=n))), QuadratureConfig(n, tuple(rng.uniform(0, math.pi, n))))
        width = float(rng.uniform(0.05, 0.5))
        binned = bin_pair(pair, (BinGrid.covering(pair.W, width), BinGrid.covering(pair.U, width)))
        worst = min(worst, min(check_inefficiency(binned, n, eta).margin for eta in etas))
    ok = gap < 1e-12 and worst >= 0
    record(9, ok, f"identity gap {gap:.1e}, smallest lossy margin {worst:.2e}", time.perf_counter() - start, 5.0)


def test_ac10_binned_convergence():
    start = time.perf_counter()
    pair = marginal_pair(CoherentProduct((0, 0)), QuadratureConfig.all_plus(2))
    errors = []
    for k in range(1, 8):
        width = 2.0**-k
        grids = (BinGrid.covering(pair.W, width), BinGrid.covering(pair.U, width))
        lhs = check_prop2(pair, grids, 2, 0.0).lhs
        errors.append(abs(lhs + 2 * math.log(width) - math.log(2 * math.e * math.pi)))
    ok = errors[-1] < 1e-4 and all(x > y for x, y in zip(errors, errors[1:]))
    record(10, ok, f"error at 2^-7: {errors[-1]:.2e}, sequence decreasing", time.perf_counter() - start, 30.0)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
