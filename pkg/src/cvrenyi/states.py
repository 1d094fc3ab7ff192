"""State families and their global-observable densities.

Conventions: hbar = 1, ``x = (a + a^dag)/sqrt(2)``, so a coherent state ``|z>``
has position wavefunction ``pi^(-1/4) exp(-x^2/2 + sqrt(2) z x - z^2/2 - |z|^2/2)``
and every quadrature marginal has variance 1/2. The rotated quadrature
``cos(theta) x + sin(theta) p`` is ``R(theta)^dag x R(theta)`` with
``R(theta)|z> = |z exp(-i theta)>``; the conjugate quadrature uses
``theta + pi/2``.

Every state here is a finite sum ``sum_k c_k |kets_k><bras_k|`` of products of
coherent states, so each term of ``<r_1..r_n|rho|r_1..r_n>`` factorizes and the
density of ``sum_l eps_l r_l`` is an exact n-fold convolution of complex
Gaussians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .density import AnalyticDensity, ComplexGaussianTerm, convolve_terms, mix

_LOG_PI_QUARTER = -0.25 * math.log(math.pi)

R, S = "R", "S"


@dataclass(frozen=True)
class QuadratureConfig:
    """Rotation angles and sign vectors defining the two global observables."""

    n: int
    thetas: tuple = ()
    r_signs: tuple = ()
    s_signs: tuple = ()

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        thetas = tuple(float(t) for t in self.thetas) or (0.0,) * self.n
        r_signs = tuple(int(s) for s in self.r_signs) or (1,) * self.n
        s_signs = tuple(int(s) for s in self.s_signs) or (1,) * self.n
        for name, seq in (("thetas", thetas), ("r_signs", r_signs), ("s_signs", s_signs)):
            if len(seq) != self.n:
                raise ValueError(f"{name} has length {len(seq)}, expected {self.n}")
        if any(s not in (1, -1) for s in r_signs + s_signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "r_signs", r_signs)
        object.__setattr__(self, "s_signs", s_signs)

    @classmethod
    def alternating(cls, n: int) -> "QuadratureConfig":
        """``theta = 0``, alternating signs on R, all plus on S (commuting for even n)."""
        return cls(n, (0.0,) * n, tuple((-1) ** l for l in range(n)), (1,) * n)

    @classmethod
    def all_plus(cls, n: int) -> "QuadratureConfig":
        return cls(n, (0.0,) * n, (1,) * n, (1,) * n)

    @property
    def commutator_sum(self) -> int:
        return sum(e * f for e, f in zip(self.r_signs, self.s_signs))

    @property
    def commuting(self) -> bool:
        return self.commutator_sum == 0

    def angle(self, mode: int, which: str) -> float:
        theta = self.thetas[mode]
        return theta if which == R else theta + 0.5 * math.pi

    def sign(self, mode: int, which: str) -> int:
        return self.r_signs[mode] if which == R else self.s_signs[mode]


@dataclass(frozen=True)
class OperatorTerm:
    """``coefficient * |kets><bras|`` with product coherent kets and bras."""

    coefficient: complex
    kets: tuple
    bras: tuple


@dataclass(frozen=True)
class CoherentProduct:
    """``|z_1> ... |z_n>``; complex amplitudes allowed."""

    z: tuple

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(complex(v) for v in self.z))
        if len(self.z) < 2:
            raise ValueError("a coherent product needs at least two modes")

    @property
    def n(self) -> int:
        return len(self.z)

    is_pure = True

    def operator_terms(self) -> list[OperatorTerm]:
        return [OperatorTerm(1.0, self.z, self.z)]


@dataclass(frozen=True)
class DephasedCat:
    """``N(z) {|z^n><z^n| + |(-z)^n><(-z)^n| - (1-c)[|z^n><(-z)^n| + h.c.]}``."""

    n: int
    z: float
    c: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if isinstance(self.z, complex) or not math.isfinite(self.z):
            raise ValueError("DephasedCat takes a real z")
        if not 0.0 <= self.c <= 1.0:
            raise ValueError(f"c must lie in [0, 1], got {self.c!r}")
        if self.c == 0.0 and self.z == 0.0:
            raise ValueError("the pure odd cat (c = 0) vanishes at z = 0")

    @property
    def is_pure(self) -> bool:
        return self.c == 0.0

    def operator_terms(self) -> list[OperatorTerm]:
        plus, minus = (complex(self.z),) * self.n, (complex(-self.z),) * self.n
        if self.z == 0.0:
            # all four terms coincide; summing them here avoids cancellation at small c
            return [OperatorTerm(2.0 * self.c, plus, plus)]
        terms = [OperatorTerm(1.0, plus, plus), OperatorTerm(1.0, minus, minus)]
        if self.c != 1.0:
            terms += [OperatorTerm(-(1.0 - self.c), plus, minus), OperatorTerm(-(1.0 - self.c), minus, plus)]
        return terms


@dataclass(frozen=True)
class AntisymCatPure:
    """``sqrt(Omega) {|z^m, (-z)^m> - |(-z)^m, z^m>}`` for ``n = 2m``."""

    n: int
    z: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 2, got {self.n!r}")
        if isinstance(self.z, complex) or not math.isfinite(self.z):
            raise ValueError("AntisymCatPure takes a real z")
        if self.z == 0:
            raise ValueError("AntisymCatPure vanishes at z = 0")

    is_pure = True

    def operator_terms(self) -> list[OperatorTerm]:
        m = self.n // 2
        a = (complex(self.z),) * m + (complex(-self.z),) * m
        b = (complex(-self.z),) * m + (complex(self.z),) * m
        return [OperatorTerm(1.0, a, a), OperatorTerm(1.0, b, b), OperatorTerm(-1.0, a, b), OperatorTerm(-1.0, b, a)]


StateSpec = Union[CoherentProduct, DephasedCat, AntisymCatPure]


def normalization_factor(state: StateSpec) -> float:
    """Prefactor making the state trace one (``N(z)`` resp. ``Omega(z)``)."""
    if isinstance(state, CoherentProduct):
        return 1.0
    if isinstance(state, DephasedCat):
        # 2 - 2(1-c) e^{-2 n z^2}, written to keep precision as z -> 0
        return 1.0 / (2.0 * state.c - 2.0 * (1.0 - state.c) * math.expm1(-2.0 * state.n * state.z**2))
    if isinstance(state, AntisymCatPure):
        return 1.0 / (-2.0 * math.expm1(-2.0 * state.n * state.z**2))
    raise TypeError(f"unknown state {state!r}")


def log_overlap(bra: complex, ket: complex) -> complex:
    """``ln <bra|ket>`` for coherent states."""
    return bra.conjugate() * ket - 0.5 * abs(bra) ** 2 - 0.5 * abs(ket) ** 2


def _profile(ket: complex, bra: complex, angle: float, sign: int) -> tuple[complex, complex, float]:
    """Complex-Gaussian form of ``x -> <x|R ket><R bra|x>`` at ``sign * x``."""
    rot = cmath.exp(-1j * angle)
    w, v = ket * rot, bra * rot
    log_amp = 2 * _LOG_PI_QUARTER + log_overlap(v, w)
    mean = (w + v.conjugate()) / math.sqrt(2.0)
    return log_amp, sign * mean, 0.5


def _log_coefficient(c: complex) -> complex:
    return np.log(complex(c))


def _term_from_profiles(log_coeff: complex, profiles) -> ComplexGaussianTerm:
    la, m, v = profiles[0]
    acc = ComplexGaussianTerm.from_complex_mean(la + log_coeff, m, v)
    for la, m, v in profiles[1:]:
        acc = convolve_terms(acc, ComplexGaussianTerm.from_complex_mean(la, m, v))
    return acc


def _assemble(terms: list[ComplexGaussianTerm]) -> AnalyticDensity:
    d = AnalyticDensity(terms, validate=False)
    total = d.total()
    if abs(total - 1.0) > 1e-9:
        raise ArithmeticError(f"assembled density has mass {total!r}")
    return AnalyticDensity(d.terms, normalize=True)


def _check_dims(state: StateSpec, config: QuadratureConfig) -> None:
    if state.n != config.n:
        raise ValueError(f"state has n={state.n} but config has n={config.n}")


def observable_density(state: StateSpec, config: QuadratureConfig, which: str) -> AnalyticDensity:
    """Density of ``sum_l sign_l q_l`` for the R or S quadratures."""
    _check_dims(state, config)
    log_norm = math.log(normalization_factor(state))
    terms = []
    for op in state.operator_terms():
        profiles = [
            _profile(op.kets[l], op.bras[l], config.angle(l, which), config.sign(l, which)) for l in range(state.n)
        ]
        terms.append(_term_from_profiles(_log_coefficient(op.coefficient) + log_norm, profiles))
    return _assemble(terms)


@dataclass(frozen=True)
class MarginalPair:
    """Densities ``W`` (R observable) and ``U`` (S observable)."""

    W: AnalyticDensity
    U: AnalyticDensity = field()


def marginal_pair(state: StateSpec, config: QuadratureConfig) -> MarginalPair:
    return MarginalPair(observable_density(state, config, R), observable_density(state, config, S))


def mix_pairs(weights: Sequence[float], pairs: Sequence[MarginalPair]) -> MarginalPair:
    """Marginals of a convex combination of states."""
    return MarginalPair(mix(weights, [p.W for p in pairs]), mix(weights, [p.U for p in pairs]))


def coherent_quadrature_density(z: complex, theta: float, which: str = R, sign: int = 1) -> AnalyticDensity:
    """Outcome density of one rotated quadrature in the coherent state ``|z>``."""
    if which not in (R, S):
        raise ValueError(f"which must be 'R' or 'S', got {which!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    angle = theta if which == R else theta + 0.5 * math.pi
    la, m, v = _profile(complex(z), complex(z), angle, sign)
    return AnalyticDensity([ComplexGaussianTerm.from_complex_mean(la, m, v)], normalize=True)


def local_reduced_densities(state: StateSpec, config: QuadratureConfig) -> list[MarginalPair]:
    """``(w_l, u_l)`` of ``r_l`` and ``s_l`` in each one-mode reduced state.

    Sign vectors do not enter: these are the local quadrature densities.
    """
    _check_dims(state, config)
    log_norm = math.log(normalization_factor(state))
    ops = state.operator_terms()
    out = []
    for l in range(state.n):
        pair = []
        for which in (R, S):
            terms = []
            for op in ops:
                others = sum(log_overlap(op.bras[k], op.kets[k]) for k in range(state.n) if k != l)
                la, m, v = _profile(op.kets[l], op.bras[l], config.angle(l, which), 1)
                log_c = _log_coefficient(op.coefficient) + log_norm + others
                terms.append(ComplexGaussianTerm.from_complex_mean(la + log_c, m, v))
            pair.append(_assemble(terms))
        out.append(MarginalPair(*pair))
    return out
