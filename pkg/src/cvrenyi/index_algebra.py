"""Sharp constants and entropic index bookkeeping.

Indices are plain floats except for the infinite index, which is the
``INF`` singleton so that ``1/a`` bookkeeping stays exact at ``t = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

# |t| below this switches every (1/t)-scaled expression to its analytic limit
T_LIMIT = 1e-6


class _Infinity:
    """The infinite entropic index (max-functional / essential supremum)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __float__(self) -> float:
        return math.inf

    def __reduce__(self):
        return (_Infinity, ())

    @property
    def reciprocal(self) -> float:
        return 0.0


INF = _Infinity()

Index = Union[float, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def reciprocal(x: Index) -> float:
    """``1/x`` with ``1/INF = 0`` exactly."""
    if x is INF:
        return 0.0
    return 1.0 / x


def from_reciprocal(r: float) -> Index:
    """Inverse of :func:`reciprocal`; ``r = 0`` gives ``INF``."""
    if r == 0.0:
        return INF
    return 1.0 / r


def conjugate_index(x: Index) -> Index:
    """Return ``x'`` with ``1/x + 1/x' = 1``.

    ``x = 1`` maps to ``INF`` and ``INF`` maps back to 1. For ``0 < x < 1`` the
    conjugate is strictly negative (the converse-Young convention).
    """
    if x is INF:
        return 1.0
    if x == 0:
        raise ValueError("index 0 has no conjugate")
    return from_reciprocal(1.0 - 1.0 / x)


def _check_unit_interval(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def _log_kappa(s: float) -> float:
    if s < T_LIMIT:
        return 1.0 - s * s / 6.0
    return ((1.0 + s) * math.log1p(s) - _xlogx(1.0 - s)) / (2.0 * s)


def kappa(tau: float) -> float:
    """Babenko-Beckner factor for ``1/alpha = 1 - tau``, ``1/beta = 1 + tau``.

    ``kappa(0) = e`` and ``kappa(1) = 2``.
    """
    _check_unit_interval("tau", tau)
    return math.exp(_log_kappa(tau))


def big_K(t: float) -> float:
    """Criterion constant; strictly decreasing from ``e`` at 0 to 2 at 1."""
    _check_unit_interval("t", t)
    return math.exp(_log_kappa(t))


def young_C(x: Index, x_conj: Index | None = None) -> float:
    """Sharp Young factor with ``2 ln C = (1/x') ln(1/|x'|) - (1/x) ln(1/|x|)``.

    Valid for ``x >= 1`` (positive conjugate) and ``0 < x < 1`` (negative
    conjugate). ``C(1) = C(2) = C(INF) = 1``.
    """
    if x is not INF and x <= 0:
        raise ValueError(f"young_C needs x > 0, got {x!r}")
    if x_conj is None:
        x_conj = conjugate_index(x)
    rx, rxc = reciprocal(x), reciprocal(x_conj)
    if abs(rx + rxc - 1.0) > 1e-12:
        raise ValueError(f"{x!r} and {x_conj!r} are not conjugate")
    # (1/y) ln(1/|y|) written through r = 1/y so that y = INF gives exactly 0
    def term(r: float) -> float:
        return 0.0 if r == 0.0 else r * math.log(abs(r))

    return math.exp(0.5 * (term(rxc) - term(rx)))


@dataclass(frozen=True)
class EntropicIndexPair:
    """``(t, a, b)`` with ``1/a = 1 - t`` and ``1/b = 1 + t``."""

    t: float
    a: Index
    b: float

    @classmethod
    def from_t(cls, t: float) -> "EntropicIndexPair":
        _check_unit_interval("t", t)
        return cls(t=t, a=from_reciprocal(1.0 - t), b=1.0 / (1.0 + t))

    @classmethod
    def from_a(cls, a: Index) -> "EntropicIndexPair":
        if a is not INF and a < 1:
            raise ValueError(f"a must be >= 1, got {a!r}")
        return cls.from_t(1.0 - reciprocal(a))

    @property
    def shannon(self) -> bool:
        return self.t < T_LIMIT


@dataclass(frozen=True)
class SubsystemIndexSet:
    """Per-subsystem indices with ``tau = t/n``.

    ``alpha_conj`` is positive (or ``INF`` at ``tau = 0``) and ``beta_conj``
    negative (or ``INF``).
    """

    n: int
    tau: float
    alpha: float
    beta: float
    alpha_conj: Index
    beta_conj: Index

    @classmethod
    def from_t(cls, n: int, t: float) -> "SubsystemIndexSet":
        if int(n) != n or n < 2:
            raise ValueError(f"n must be an integer >= 2, got {n!r}")
        _check_unit_interval("t", t)
        tau = t / n
        return cls(
            n=int(n),
            tau=tau,
            alpha=1.0 / (1.0 - tau),
            beta=1.0 / (1.0 + tau),
            alpha_conj=from_reciprocal(tau),
            beta_conj=from_reciprocal(-tau),
        )


def criterion_bound(n: int, t: float) -> float:
    """``ln(n K(t) pi)``, the right-hand side of the differential conditions."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return math.log(n * big_K(t) * math.pi)


def constant_identity_check(n: int, t: float) -> float:
    """Residual of the identity collapsing the Young/Hausdorff-Young constants.

    Returns ``(1/t) ln[C(a) C(beta)^n / (C(alpha)^n C(b))] + ln(kappa(t/n) pi)
    - ln(n K(t) pi)``, which vanishes for interior ``t``.
    """
    pair = EntropicIndexPair.from_t(t)
    sub = SubsystemIndexSet.from_t(n, t)
    log_ratio = (
        math.log(young_C(pair.a))
        + n * math.log(young_C(sub.beta, sub.beta_conj))
        - n * math.log(young_C(sub.alpha, sub.alpha_conj))
        - math.log(young_C(pair.b))
    )
    lhs = log_ratio / t + math.log(kappa(sub.tau) * math.pi)
    return lhs - criterion_bound(n, t)


def pure_state_constant(n: int, t: float) -> float:
    """``(1/t) ln(C(a) / C(alpha)^n)``; tends to ``ln(n)/2`` as ``t -> 0``."""
    if t < T_LIMIT:
        return 0.5 * math.log(n)
    pair = EntropicIndexPair.from_t(t)
    sub = SubsystemIndexSet.from_t(n, t)
    return (math.log(young_C(pair.a)) - n * math.log(young_C(sub.alpha, sub.alpha_conj))) / t
