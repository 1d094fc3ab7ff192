"""One-dimensional probability densities and the operations acting on them.

:class:`AnalyticDensity` is a finite sum of Gaussian-exponential terms and is
closed under convolution, reflection and convex mixing, so the global
observable densities of every state family in :mod:`cvrenyi.states` are exact.
:class:`GridDensity` is a sampled density used as an independent numerical
oracle (FFT convolution, trapezoid functionals) and for user-supplied data.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import optimize, special

from . import quadrature
from .index_algebra import INF, Index, kappa
from .report import ConditionId, CriterionReport

# truncation half-width in units of the widest term's standard deviation
TAIL_SIGMAS = 12.0
# evaluation clamps roundoff negatives in [-NEG_CLIP, 0) to zero
NEG_CLIP = 1e-12


@dataclass(frozen=True)
class ComplexGaussianTerm:
    """``amplitude * exp(-(x - mean)^2 / (2 variance)) * exp(i frequency x)``.

    A complex centre ``m`` is stored as a real ``mean`` plus ``frequency``;
    see :meth:`from_complex_mean`.
    """

    amplitude: complex
    mean: float
    variance: float
    frequency: float = 0.0

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError(f"variance must be > 0, got {self.variance!r}")

    @classmethod
    def from_complex_mean(cls, log_amplitude: complex, mean: complex, variance: float):
        """Build ``exp(log_amplitude) * exp(-(x - mean)^2 / (2 variance))``.

        The amplitude is assembled in log space so that large imaginary
        centres (fast oscillations with tiny overlaps) do not overflow.
        """
        mean = complex(mean)
        freq = mean.imag / variance
        mu = mean.real
        log_a = complex(log_amplitude) - 1j * freq * mu + 0.5 * freq * freq * variance
        return cls(amplitude=complex(np.exp(log_a)), mean=mu, variance=float(variance), frequency=freq)

    def complex_form(self) -> tuple[complex, complex, float]:
        """``(log_amplitude, complex_mean, variance)``, inverse of :meth:`from_complex_mean`."""
        k, v, mu = self.frequency, self.variance, self.mean
        log_c = np.log(complex(self.amplitude)) + 1j * k * mu - 0.5 * k * k * v
        return log_c, complex(mu, k * v), v

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        g = np.exp(-((x - self.mean) ** 2) / (2.0 * self.variance))
        return self.amplitude * g * np.exp(1j * self.frequency * x)

    def integral(self) -> complex:
        v, k = self.variance, self.frequency
        return self.amplitude * math.sqrt(2 * math.pi * v) * np.exp(1j * k * self.mean - 0.5 * k * k * v)

    def conjugate(self) -> "ComplexGaussianTerm":
        return ComplexGaussianTerm(np.conj(self.amplitude), self.mean, self.variance, -self.frequency)

    def reflected(self) -> "ComplexGaussianTerm":
        return ComplexGaussianTerm(self.amplitude, -self.mean, self.variance, -self.frequency)

    def scaled(self, c: complex) -> "ComplexGaussianTerm":
        return ComplexGaussianTerm(c * self.amplitude, self.mean, self.variance, self.frequency)


def convolve_terms(t1: ComplexGaussianTerm, t2: ComplexGaussianTerm) -> ComplexGaussianTerm:
    la1, m1, v1 = t1.complex_form()
    la2, m2, v2 = t2.complex_form()
    v = v1 + v2
    log_amp = la1 + la2 + 0.5 * math.log(2 * math.pi * v1 * v2 / v)
    return ComplexGaussianTerm.from_complex_mean(log_amp, m1 + m2, v)


def _key(t: ComplexGaussianTerm) -> tuple:
    return (round(t.mean, 10) + 0.0, round(t.variance, 10) + 0.0, round(t.frequency, 10) + 0.0)


def _simplify(terms: Iterable[ComplexGaussianTerm]) -> tuple[ComplexGaussianTerm, ...]:
    """Merge terms with equal shape and check closure under conjugation."""
    merged: dict[tuple, ComplexGaussianTerm] = {}
    # tolerance follows the inputs, so cancelling terms do not shrink it
    scale = 0.0
    for t in terms:
        scale = max(scale, abs(t.amplitude))
        k = _key(t)
        if k in merged:
            m = merged[k]
            merged[k] = ComplexGaussianTerm(m.amplitude + t.amplitude, m.mean, m.variance, m.frequency)
        else:
            merged[k] = t
    out = []
    for k, t in sorted(merged.items()):
        if abs(t.amplitude) <= 1e-300:
            continue
        tol = 1e-10 * scale
        if k[2] == 0.0:
            if abs(t.amplitude.imag) > tol:
                raise ValueError("term list is not closed under conjugation (complex zero-frequency amplitude)")
            out.append(ComplexGaussianTerm(complex(t.amplitude.real), t.mean, t.variance, 0.0))
        else:
            partner = merged.get((k[0], k[1], -k[2] + 0.0))
            if partner is None or abs(partner.amplitude - np.conj(t.amplitude)) > tol:
                raise ValueError("term list is not closed under conjugation")
            out.append(t)
    return tuple(out)


class AnalyticDensity:
    """Real density ``sum_k term_k(x)`` whose terms come in conjugate pairs.

    Parameters
    ----------
    terms : iterable of ComplexGaussianTerm
        Terms with equal shape are merged; the list must be closed under
        conjugation so the sum is real by construction.
    normalize : bool
        Rescale so that the closed-form integral is exactly 1.
    validate : bool
        Require the closed-form integral to be 1 within 1e-10.
    """

    def __init__(self, terms: Iterable[ComplexGaussianTerm], normalize: bool = False, validate: bool = True):
        terms = _simplify(terms)
        if not terms:
            raise ValueError("density needs at least one term")
        total = sum(t.integral() for t in terms).real
        if normalize:
            if not total > 0:
                raise ValueError(f"cannot normalize: total mass {total}")
            terms = tuple(t.scaled(1.0 / total) for t in terms)
            total = 1.0
        if validate and abs(total - 1.0) > 1e-10:
            raise ValueError(f"density integrates to {total!r}, not 1")
        self.terms = terms
        # one representative per conjugate pair, weight 2 on the real part
        reps = [t for t in terms if t.frequency >= 0.0]
        self._amp = np.array([t.amplitude * (2.0 if t.frequency > 0 else 1.0) for t in reps])
        self._mean = np.array([t.mean for t in reps])
        self._var = np.array([t.variance for t in reps])
        self._freq = np.array([t.frequency for t in reps])

    def __repr__(self) -> str:
        return f"AnalyticDensity({len(self.terms)} terms)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnalyticDensity) or len(self.terms) != len(other.terms):
            return False
        return all(
            _key(a) == _key(b) and abs(a.amplitude - b.amplitude) <= 1e-12 * max(1.0, abs(a.amplitude))
            for a, b in zip(self.terms, other.terms)
        )

    __hash__ = None

    def __call__(self, x, clip: bool = True):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1)
        out = np.zeros(flat.shape)
        for a, mu, v, k in zip(self._amp, self._mean, self._var, self._freq):
            g = np.exp(-((flat - mu) ** 2) / (2.0 * v))
            if k == 0.0:
                out += a.real * g
            else:
                out += (a.real * np.cos(k * flat) - a.imag * np.sin(k * flat)) * g
        if clip:
            out[(out < 0) & (out >= -NEG_CLIP)] = 0.0
        return out.reshape(x.shape)

    def total(self) -> float:
        return float(sum(t.integral() for t in self.terms).real)

    @property
    def max_std(self) -> float:
        return float(np.sqrt(self._var.max()))

    def support(self, alpha: float = 1.0) -> tuple[float, float]:
        """Truncated domain; widened for ``alpha < 1`` where tails decay slower."""
        width = TAIL_SIGMAS * max(1.0, 1.0 / math.sqrt(alpha)) * self.max_std
        return float(self._mean.min() - width), float(self._mean.max() + width)

    def resolution(self) -> float:
        """Initial panel width: one standard deviation or half an oscillation period."""
        h = float(np.sqrt(self._var.min()))
        kmax = float(np.abs(self._freq).max())
        if kmax > 0:
            h = min(h, math.pi / kmax)
        return h

    def tail_bound(self, lo: float, hi: float) -> float:
        """Upper bound on the mass magnitude outside ``[lo, hi]``."""
        total = 0.0
        for t in self.terms:
            s = math.sqrt(2.0 * t.variance)
            envelope = abs(t.amplitude) * math.sqrt(2 * math.pi * t.variance)
            total += 0.5 * envelope * (special.erfc((hi - t.mean) / s) + special.erfc((t.mean - lo) / s))
        return total

    def power_integral(self, alpha: float) -> float:
        """``int d(x)^alpha dx`` by adaptive Gauss-Legendre quadrature."""
        if not alpha > 0:
            raise ValueError(f"alpha must be > 0, got {alpha!r}")
        lo, hi = self.support(alpha)
        return quadrature.integrate(lambda x: np.maximum(self(x), 0.0) ** alpha, [lo, hi], self.resolution())

    def entropy_integral(self) -> float:
        """``-int d ln d`` with ``0 ln 0 = 0``."""
        lo, hi = self.support()

        def integrand(x):
            d = np.maximum(self(x), 0.0)
            return -special.xlogy(d, d)

        return quadrature.integrate(integrand, [lo, hi], self.resolution())

    def supremum(self) -> float:
        lo, hi = self.support()
        h = self.resolution() / 16.0
        x = np.linspace(lo, hi, int(math.ceil((hi - lo) / h)) + 1)
        y = self(x)
        i = int(np.argmax(y))
        step = x[1] - x[0]
        res = optimize.minimize_scalar(
            lambda u: -float(self(u)),
            bounds=(x[max(i - 1, 0)], x[min(i + 1, len(x) - 1)]),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, step)},
        )
        return max(float(y[i]), -float(res.fun))


def gaussian(mean: float = 0.0, variance: float = 1.0) -> AnalyticDensity:
    """Normal density as an :class:`AnalyticDensity`."""
    amp = 1.0 / math.sqrt(2 * math.pi * variance)
    return AnalyticDensity([ComplexGaussianTerm(amp, mean, variance)])


def gaussian_mixture(weights: Sequence[float], means: Sequence[float], variances: Sequence[float]) -> AnalyticDensity:
    terms = [
        ComplexGaussianTerm(w / math.sqrt(2 * math.pi * v), m, v)
        for w, m, v in zip(weights, means, variances)
    ]
    return AnalyticDensity(terms, normalize=True)


def convolve(d1: AnalyticDensity, d2: AnalyticDensity) -> AnalyticDensity:
    """Exact convolution by pairwise convolution of the terms."""
    terms = [convolve_terms(s, t) for s in d1.terms for t in d2.terms]
    return AnalyticDensity(terms, normalize=True)


def convolve_many(ds: Sequence[AnalyticDensity]) -> AnalyticDensity:
    out = ds[0]
    for d in ds[1:]:
        out = convolve(out, d)
    return out


def reflect_scale(d: AnalyticDensity, sign: int) -> AnalyticDensity:
    """``x -> d(sign * x)`` for ``sign`` in {+1, -1}."""
    if sign == 1:
        return d
    if sign != -1:
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return AnalyticDensity([t.reflected() for t in d.terms])


def mix(weights: Sequence[float], ds: Sequence[AnalyticDensity]) -> AnalyticDensity:
    """Convex combination ``sum_k weights[k] * ds[k]``."""
    if len(weights) != len(ds):
        raise ValueError("weights and densities differ in length")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise ValueError(f"weights must be nonnegative and sum to 1, got {list(weights)}")
    return AnalyticDensity([t.scaled(wk) for wk, d in zip(w, ds) for t in d.terms])


class GridDensity:
    """Density sampled on ``left_edge + spacing * arange(len(values))``.

    Values are renormalized so the trapezoid integral is 1.
    """

    def __init__(self, left_edge: float, spacing: float, values, normalize: bool = True):
        if not spacing > 0:
            raise ValueError(f"spacing must be > 0, got {spacing!r}")
        values = np.asarray(values, dtype=float).copy()
        if values.ndim != 1 or values.size < 2:
            raise ValueError("values must be a 1-D array with at least two points")
        values[(values < 0) & (values >= -NEG_CLIP)] = 0.0
        if np.any(values < 0):
            raise ValueError("grid density has negative values")
        total = np.trapezoid(values, dx=spacing)
        if normalize:
            values /= total
        elif abs(total - 1.0) > 1e-8:
            raise ValueError(f"grid density integrates to {total!r}")
        self.left_edge = float(left_edge)
        self.spacing = float(spacing)
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def from_density(cls, d: AnalyticDensity, spacing: float, lo: float | None = None, hi: float | None = None):
        """Sample ``d`` on a grid aligned to multiples of ``spacing``."""
        s_lo, s_hi = d.support()
        lo = s_lo if lo is None else lo
        hi = s_hi if hi is None else hi
        i0 = math.floor(lo / spacing)
        i1 = math.ceil(hi / spacing)
        tail = d.tail_bound(i0 * spacing, i1 * spacing)
        if tail >= 1e-12:
            raise ValueError(f"grid domain leaves tail mass up to {tail:.3g}")
        x = np.arange(i0, i1 + 1) * spacing
        return cls(i0 * spacing, spacing, d(x))

    @property
    def x(self) -> np.ndarray:
        return self.left_edge + self.spacing * np.arange(self.values.size)

    def __call__(self, x):
        return np.interp(x, self.x, self.values, left=0.0, right=0.0)

    def power_integral(self, alpha: float) -> float:
        if not alpha > 0:
            raise ValueError(f"alpha must be > 0, got {alpha!r}")
        return float(np.trapezoid(self.values**alpha, dx=self.spacing))

    def entropy_integral(self) -> float:
        return float(np.trapezoid(-special.xlogy(self.values, self.values), dx=self.spacing))

    def supremum(self) -> float:
        return float(self.values.max())

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "density"])
            for xi, vi in zip(self.x, self.values):
                w.writerow([repr(float(xi)), repr(float(vi))])

    @classmethod
    def from_csv(cls, path) -> "GridDensity":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if rows[0] != ["x", "density"]:
            raise ValueError(f"expected header x,density, got {rows[0]}")
        x = np.array([float(r[0]) for r in rows[1:]])
        v = np.array([float(r[1]) for r in rows[1:]])
        dx = np.diff(x)
        if not np.allclose(dx, dx[0], rtol=1e-9, atol=0):
            raise ValueError("grid in CSV is not uniform")
        return cls(x[0], (x[-1] - x[0]) / (x.size - 1), v)


def convolve_grid(g1: GridDensity, g2: GridDensity) -> GridDensity:
    """Linear convolution of two sampled densities via zero-padded FFT."""
    if not math.isclose(g1.spacing, g2.spacing, rel_tol=1e-12):
        raise ValueError(f"spacing mismatch: {g1.spacing} vs {g2.spacing}")
    n = g1.values.size + g2.values.size - 1
    nfft = 1 << (n - 1).bit_length()
    # fixed operand order: the complex product is not bitwise commutative under FMA
    if (g2.left_edge, g2.values.size, g2.values.tobytes()) < (g1.left_edge, g1.values.size, g1.values.tobytes()):
        g1, g2 = g2, g1
    f = np.fft.rfft(g1.values, nfft) * np.fft.rfft(g2.values, nfft)
    out = np.fft.irfft(f, nfft)[:n] * g1.spacing
    out[np.abs(out) < 1e-300] = 0.0
    out = np.maximum(out, 0.0)
    return GridDensity(g1.left_edge + g2.left_edge, g1.spacing, out)


def lp_functional(d, alpha: Index) -> float:
    """``(int |d|^alpha)^(1/alpha)``; ``INF`` gives the essential supremum."""
    if alpha is INF:
        return d.supremum()
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    return d.power_integral(alpha) ** (1.0 / alpha)


def hermite_functions(kmax: int, x) -> np.ndarray:
    """Rows ``k = 0..kmax`` of the harmonic-oscillator eigenfunctions at ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if kmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, kmax):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


class HermiteMixture:
    """``sum_k p_k |psi_k(x)|^2``: a density that is its own momentum density.

    Each ``psi_k`` is an eigenfunction of the unitary Fourier transform, so the
    position and momentum densities of any such mixture coincide.
    """

    def __init__(self, weights: Mapping[int, float] | int):
        if isinstance(weights, (int, np.integer)):
            weights = {int(weights): 1.0}
        w = {int(k): float(p) for k, p in weights.items() if p != 0}
        if any(k < 0 for k in w) or any(p < 0 for p in w.values()):
            raise ValueError("Hermite indices and weights must be nonnegative")
        s = sum(w.values())
        if abs(s - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {s}, not 1")
        self.weights = w
        self.kmax = max(w)
        self._p = np.zeros(self.kmax + 1)
        for k, p in w.items():
            self._p[k] = p
        zeros = []
        for k in w:
            if k > 0:
                c = np.zeros(k + 1)
                c[k] = 1.0
                zeros.extend(np.polynomial.hermite.hermroots(c).real)
        half = math.sqrt(2 * self.kmax + 1) + 10.0
        self._edges = np.unique(np.concatenate(([-half, half], np.round(zeros, 14))))

    def __call__(self, x):
        psi = hermite_functions(self.kmax, x)
        return np.tensordot(self._p, psi * psi, axes=1)

    def power_integral(self, alpha: float) -> float:
        return quadrature.integrate(lambda x: self(x) ** alpha, self._edges, 0.25, rtol=1e-12)

    def entropy_integral(self) -> float:
        return quadrature.integrate(lambda x: -special.xlogy(self(x), self(x)), self._edges, 0.25, rtol=1e-12)

    def supremum(self) -> float:
        x = np.linspace(self._edges[0], self._edges[-1], 20001)
        y = self(x)
        i = int(np.argmax(y))
        res = optimize.minimize_scalar(
            lambda u: -float(self(u)), bounds=(x[max(i - 1, 0)], x[min(i + 1, x.size - 1)]), method="bounded",
            options={"xatol": 1e-12},
        )
        return max(float(y[i]), -float(res.fun))


def fourier_pair_check(psi_spec, alpha: float, beta: float) -> CriterionReport:
    """Check the sharp position-momentum norm inequality on a Hermite density.

    Reports ``lhs = ln[(1/(kappa pi))^((1-beta)/beta) ||momentum||_beta]``
    against ``rhs = ln ||position||_alpha``; the inequality holds when the
    margin is nonnegative. ``psi_spec`` is an eigenfunction index or a mapping
    ``{k: weight}`` describing a mixture.
    """
    if not (alpha > 1 > beta > 0) or abs(1 / alpha + 1 / beta - 2.0) > 1e-12:
        raise ValueError(f"need 1/alpha + 1/beta = 2 with alpha > 1 > beta, got {alpha}, {beta}")
    v = HermiteMixture(psi_spec)
    tau = 1.0 / beta - 1.0
    exponent = (1.0 - beta) / beta
    lhs = -exponent * math.log(kappa(tau) * math.pi) + math.log(lp_functional(v, beta))
    rhs = math.log(lp_functional(v, alpha))
    return CriterionReport(
        ConditionId.HAUSDORFF_YOUNG, lhs, rhs, params={"k": "|".join(f"{k}:{p:g}" for k, p in sorted(v.weights.items())), "alpha": alpha, "beta": beta},
    )
