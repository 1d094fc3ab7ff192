"""Brute-force reference densities from truncated number-state expansions.

Independent of the closed-form Gaussian algebra in :mod:`states`: coherent
wavefunctions are summed term by term in the number basis, the two-mode
quadrature density is built pointwise, and marginals come from direct line
and partial-trace integrals on a uniform grid. Two modes only.
"""

from __future__ import annotations

import math

import numpy as np

from .states import R, S, QuadratureConfig, normalization_factor

LEVELS = 80
SPACING = 1e-2
HALF_WIDTH = 10.0


def fock_wavefunction(z: complex, x, levels: int = LEVELS) -> np.ndarray:
    """``<x|z>`` as ``exp(-|z|^2/2) sum_k z^k/sqrt(k!) psi_k(x)``."""
    x = np.asarray(x, dtype=float)
    z = complex(z)
    h_prev = np.zeros(x.shape)
    h = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    coeff = complex(math.exp(-0.5 * abs(z) ** 2))
    out = coeff * h
    for k in range(levels):
        # psi_{k+1} from psi_k, psi_{k-1}
        h_next = math.sqrt(2.0 / (k + 1)) * x * h - math.sqrt(k / (k + 1)) * h_prev
        h_prev, h = h, h_next
        coeff *= z / math.sqrt(k + 1)
        out = out + coeff * h
    return out


def _mode_functions(state, config: QuadratureConfig, which: str):
    """Per operator term: coefficient and callables for kets/bras on each mode."""
    out = []
    for op in state.operator_terms():
        angles = [config.angle(l, which) for l in range(2)]
        kets = [op.kets[l] * np.exp(-1j * angles[l]) for l in range(2)]
        bras = [op.bras[l] * np.exp(-1j * angles[l]) for l in range(2)]
        out.append((op.coefficient, kets, bras))
    return out


def _joint(terms, norm, r1, r2) -> np.ndarray:
    v = np.zeros(np.broadcast(r1, r2).shape, dtype=complex)
    for coeff, kets, bras in terms:
        v += (
            coeff
            * fock_wavefunction(kets[0], r1)
            * fock_wavefunction(kets[1], r2)
            * np.conj(fock_wavefunction(bras[0], r1) * fock_wavefunction(bras[1], r2))
        )
    return norm * v.real


def _grid(spacing: float, half_width: float) -> np.ndarray:
    k = int(round(half_width / spacing))
    return np.arange(-k, k + 1) * spacing


def observable_density(state, config: QuadratureConfig, which: str, x, spacing: float = SPACING, half_width: float = HALF_WIDTH) -> np.ndarray:
    """Density of ``e_1 q_1 + e_2 q_2`` at points ``x`` by a line integral."""
    if state.n != 2 or config.n != 2:
        raise ValueError("the reference computation handles two modes only")
    terms = _mode_functions(state, config, which)
    norm = normalization_factor(state)
    e1, e2 = config.sign(0, which), config.sign(1, which)
    r1 = _grid(spacing, half_width)
    out = np.empty(np.size(x))
    for i, xi in enumerate(np.ravel(x)):
        out[i] = np.sum(_joint(terms, norm, r1, e2 * (xi - e1 * r1))) * spacing
    return out.reshape(np.shape(x))


def local_densities(state, config: QuadratureConfig, which: str, x, spacing: float = SPACING, half_width: float = HALF_WIDTH) -> list[np.ndarray]:
    """One-mode densities of the ``which`` quadrature by partial integration."""
    if state.n != 2 or config.n != 2:
        raise ValueError("the reference computation handles two modes only")
    terms = _mode_functions(state, config, which)
    norm = normalization_factor(state)
    grid = _grid(spacing, half_width)
    x = np.ravel(x)
    first = np.sum(_joint(terms, norm, x[:, None], grid[None, :]), axis=1) * spacing
    second = np.sum(_joint(terms, norm, grid[None, :], x[:, None]), axis=1) * spacing
    return [first, second]


def max_marginal_error(state, config: QuadratureConfig, x=None) -> float:
    """Largest absolute gap between the closed-form and reference densities."""
    from .states import local_reduced_densities, marginal_pair

    x = np.linspace(-6.0, 6.0, 121) if x is None else np.asarray(x, dtype=float)
    pair = marginal_pair(state, config)
    err = 0.0
    for which, d in ((R, pair.W), (S, pair.U)):
        err = max(err, float(np.max(np.abs(d(x) - observable_density(state, config, which, x)))))
    local = local_reduced_densities(state, config)
    for which in (R, S):
        ref = local_densities(state, config, which, x)
        for l in range(2):
            d = local[l].W if which == R else local[l].U
            err = max(err, float(np.max(np.abs(d(x) - ref[l]))))
    return err
