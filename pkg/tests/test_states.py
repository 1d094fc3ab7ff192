import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cvrenyi import fock
from cvrenyi.density import convolve_many, gaussian, lp_functional, reflect_scale
from cvrenyi.states import (
    AntisymCatPure,
    CoherentProduct,
    DephasedCat,
    QuadratureConfig,
    R,
    S,
    coherent_quadrature_density,
    local_reduced_densities,
    marginal_pair,
    normalization_factor,
)

X = np.linspace(-7.0, 7.0, 281)


def fock_overlap(bra, ket, levels=80):
    """``<bra|ket>`` from truncated number-basis coefficients."""
    def coeffs(z):
        c = np.empty(levels, dtype=complex)
        c[0] = math.exp(-0.5 * abs(z) ** 2)
        for k in range(1, levels):
            c[k] = c[k - 1] * z / math.sqrt(k)
        return c

    return complex(np.vdot(coeffs(complex(bra)), coeffs(complex(ket))))


def fock_trace(state):
    return sum(op.coefficient * np.prod([fock_overlap(b, k) for k, b in zip(op.kets, op.bras)]) for op in state.operator_terms()).real


def momentum_density(z, p):
    """``|FT psi_z|^2`` by direct quadrature of the position wavefunction."""
    x = np.linspace(-20, 20, 8001)
    psi = math.pi**-0.25 * np.exp(-0.5 * x**2 + math.sqrt(2) * z * x - z * z)
    phi = np.array([np.trapezoid(psi * np.exp(-1j * pk * x), x) for pk in np.atleast_1d(p)]) / math.sqrt(2 * math.pi)
    return np.abs(phi) ** 2


def normal_pdf(x, mean, variance):
    return np.exp(-((x - mean) ** 2) / (2 * variance)) / math.sqrt(2 * math.pi * variance)


def random_config(rng, n):
    return QuadratureConfig(
        n, tuple(rng.uniform(0, 2 * math.pi, n)), tuple(rng.choice([-1, 1], n)), tuple(rng.choice([-1, 1], n))
    )


configs = st.builds(lambda n, seed: random_config(np.random.default_rng(seed), n), st.integers(2, 5), st.integers(0, 2**32 - 1))


def test_config_defaults_and_commutator():
    cfg = QuadratureConfig.alternating(4)
    assert cfg.r_signs == (1, -1, 1, -1) and cfg.s_signs == (1, 1, 1, 1)
    assert cfg.commutator_sum == 0 and cfg.commuting
    assert QuadratureConfig.all_plus(3).commutator_sum == 3
    assert QuadratureConfig(2).thetas == (0.0, 0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(2, r_signs=(1, 2))
    with pytest.raises(ValueError):
        QuadratureConfig(3, thetas=(0.0, 0.0))


def test_state_validation():
    with pytest.raises(ValueError):
        AntisymCatPure(2, 0.0)
    with pytest.raises(ValueError):
        AntisymCatPure(3, 1.0)
    with pytest.raises(ValueError):
        DephasedCat(2, 1.0, 1.5)
    with pytest.raises(ValueError):
        DephasedCat(2, 0.0, 0.0)
    with pytest.raises(ValueError):
        marginal_pair(DephasedCat(3, 1.0, 0.5), QuadratureConfig.alternating(4))


@pytest.mark.parametrize("theta", [0.0, 0.7, 2.0])
@pytest.mark.parametrize("which", [R, S])
def test_vacuum_quadrature_density(theta, which):
    assert coherent_quadrature_density(0.0, theta, which) == gaussian(0.0, 0.5)


def test_real_coherent_quadratures_against_wavefunction():
    z = 0.8
    w = coherent_quadrature_density(z, 0.0, R)
    psi = math.pi**-0.25 * np.exp(-((X - math.sqrt(2) * z) ** 2) / 2)
    assert np.max(np.abs(w(X) - psi**2)) < 1e-14
    assert w == gaussian(math.sqrt(2) * z, 0.5)
    p = np.linspace(-4, 4, 17)
    u = coherent_quadrature_density(z, 0.0, S)
    assert np.max(np.abs(u(p) - momentum_density(z, p))) < 1e-10
    assert u == gaussian(0.0, 0.5)
    assert coherent_quadrature_density(z, 0.0, R, -1) == gaussian(-math.sqrt(2) * z, 0.5)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_degenerate_cat_is_vacuum(n):
    pair = marginal_pair(DephasedCat(n, 0.0, 0.4), QuadratureConfig.alternating(n))
    assert pair.W == gaussian(0.0, n / 2) and pair.U == gaussian(0.0, n / 2)
    pair = marginal_pair(CoherentProduct((0,) * n), random_config(np.random.default_rng(n), n))
    assert pair.W == gaussian(0.0, n / 2) and pair.U == gaussian(0.0, n / 2)


def test_normalization_examples():
    assert normalization_factor(DephasedCat(3, 1.7, 1.0)) == 0.5
    expected = 1 / (2 - 2 * math.exp(-4.0))
    for state in (DephasedCat(2, 1.0, 0.0), AntisymCatPure(2, 1.0)):
        assert normalization_factor(state) == pytest.approx(expected, rel=1e-14)
        assert normalization_factor(state) * fock_trace(state) == pytest.approx(1.0, abs=1e-13)


@given(st.integers(2, 8), st.floats(0.01, 3.0), st.floats(0.0, 1.0))
def test_dephased_cat_trace_one(n, z, c):
    state = DephasedCat(n, z, c)
    assert normalization_factor(state) * fock_trace(state) == pytest.approx(1.0, abs=1e-10)


@given(configs, st.integers(0, 2**32 - 1))
def test_marginals_normalized_and_nonnegative(cfg, seed):
    rng = np.random.default_rng(seed)
    n = cfg.n
    states = [
        CoherentProduct(tuple(rng.normal(size=n) + 1j * rng.normal(size=n))),
        DephasedCat(n, float(rng.uniform(0.05, 3.0)), float(rng.uniform(0, 1))),
    ]
    if n % 2 == 0:
        states.append(AntisymCatPure(n, float(rng.uniform(0.05, 3.0))))
    for state in states:
        pair = marginal_pair(state, cfg)
        for d in (pair.W, pair.U):
            assert d.total() == pytest.approx(1.0, abs=1e-9)
            lo, hi = d.support()
            assert np.min(d(np.linspace(lo, hi, 2001), clip=False)) >= -1e-10


@given(configs, st.floats(0.05, 3.0), st.floats(0.0, 1.0))
def test_global_sign_flip_preserves_norms(cfg, z, c):
    flipped = QuadratureConfig(cfg.n, cfg.thetas, tuple(-s for s in cfg.r_signs), cfg.s_signs)
    w1 = marginal_pair(DephasedCat(cfg.n, z, c), cfg).W
    w2 = marginal_pair(DephasedCat(cfg.n, z, c), flipped).W
    for alpha in (0.5, 2.0):
        assert lp_functional(w1, alpha) == pytest.approx(lp_functional(w2, alpha), rel=1e-10)


@given(configs, st.integers(0, 2**32 - 1))
def test_product_marginal_is_convolution(cfg, seed):
    rng = np.random.default_rng(seed)
    z = tuple(rng.normal(size=cfg.n) + 1j * rng.normal(size=cfg.n))
    pair = marginal_pair(CoherentProduct(z), cfg)
    for which, d in ((R, pair.W), (S, pair.U)):
        locals_ = [
            reflect_scale(coherent_quadrature_density(z[l], cfg.thetas[l], which), cfg.sign(l, which)) for l in range(cfg.n)
        ]
        assert d == convolve_many(locals_)


def test_dephased_cat_example_against_grid_oracle():
    state, cfg = DephasedCat(2, 1.0, 0.5), QuadratureConfig.alternating(2)
    pair = marginal_pair(state, cfg)
    x = np.linspace(-6, 6, 61)
    assert np.max(np.abs(pair.W(x) - fock.observable_density(state, cfg, R, x))) < 1e-6
    assert np.max(np.abs(pair.U(x) - fock.observable_density(state, cfg, S, x))) < 1e-6


@pytest.mark.parametrize(
    "state, cfg",
    [
        (CoherentProduct((0.5 - 0.3j, 1.2 + 0.8j)), QuadratureConfig(2, (0.3, 2.1), (-1, -1), (1, -1))),
        (DephasedCat(2, 0.6, 0.0), QuadratureConfig.alternating(2)),
        (DephasedCat(2, 2.0, 0.25), QuadratureConfig(2, (0.4, 0.4), (1, 1), (1, -1))),
        (AntisymCatPure(2, 0.4), QuadratureConfig.all_plus(2)),
        (AntisymCatPure(2, 1.5), QuadratureConfig.alternating(2)),
    ],
)
def test_oracle_equivalence(state, cfg):
    assert fock.max_marginal_error(state, cfg, np.linspace(-6, 6, 31)) < 1e-6


def test_local_densities_of_product():
    z = (0.4 + 0.2j, -1.0 + 0.5j, 0.3j)
    cfg = QuadratureConfig(3, (0.1, 0.9, 2.0), (1, -1, 1), (-1, 1, 1))
    for l, pair in enumerate(local_reduced_densities(CoherentProduct(z), cfg)):
        assert pair.W == coherent_quadrature_density(z[l], cfg.thetas[l], R)
        assert pair.U == coherent_quadrature_density(z[l], cfg.thetas[l], S)


def test_local_densities_of_dephased_cat_against_partial_trace():
    state, cfg = DephasedCat(2, 0.7, 0.3), QuadratureConfig(2, (0.2, 1.1))
    local = local_reduced_densities(state, cfg)
    x = np.linspace(-6, 6, 61)
    for which in (R, S):
        ref = fock.local_densities(state, cfg, which, x)
        for l in range(2):
            d = local[l].W if which == R else local[l].U
            assert np.max(np.abs(d(x) - ref[l])) < 1e-8


def test_antisymmetric_cat_local_density_large_z():
    z = 3.0
    w = local_reduced_densities(AntisymCatPure(2, z), QuadratureConfig.all_plus(2))[0].W
    expected = 0.5 * normal_pdf(X, math.sqrt(2) * z, 0.5) + 0.5 * normal_pdf(X, -math.sqrt(2) * z, 0.5)
    assert np.max(np.abs(w(X) - expected)) < 1e-6


@pytest.mark.parametrize("n", [2, 4, 8])
def test_antisymmetric_cat_all_plus_position_is_gaussian(n):
    pair = marginal_pair(AntisymCatPure(n, 0.8), QuadratureConfig.all_plus(n))
    assert np.max(np.abs(pair.W(X) - normal_pdf(X, 0.0, n / 2))) < 1e-12


@given(st.integers(2, 10), st.floats(0.0, 4.0), st.floats(0.0, 1.0))
def test_dephased_cat_marginals_nonnegative(n, z, c):
    # the cat/anticat cancellation is ill-conditioned once 2c + 4nz^2 approaches roundoff
    assume((z == 0 and c > 0) or c + z * z > 1e-4)
    pair = marginal_pair(DephasedCat(n, z, c), QuadratureConfig.alternating(n))
    for d in (pair.W, pair.U):
        lo, hi = d.support()
        assert np.min(d(np.linspace(lo, hi, 4001), clip=False)) >= -1e-10
