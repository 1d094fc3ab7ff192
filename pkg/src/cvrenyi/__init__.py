"""Rényi-entropy separability conditions for n-partite continuous-variable systems."""

from .index_algebra import (
    INF,
    EntropicIndexPair,
    SubsystemIndexSet,
    big_K,
    conjugate_index,
    constant_identity_check,
    criterion_bound,
    kappa,
    young_C,
)
from .density import (
    AnalyticDensity,
    ComplexGaussianTerm,
    GridDensity,
    convolve,
    convolve_grid,
    fourier_pair_check,
    gaussian,
    lp_functional,
    mix,
    reflect_scale,
)
from .entropy import (
    DiscreteDistribution,
    alpha_log,
    renyi_differential,
    renyi_discrete,
    shannon_differential,
    shannon_discrete,
    tsallis_discrete,
)
from .report import ConditionId, CriterionReport
from .states import (
    AntisymCatPure,
    CoherentProduct,
    DephasedCat,
    MarginalPair,
    QuadratureConfig,
    coherent_quadrature_density,
    local_reduced_densities,
    marginal_pair,
    normalization_factor,
)
from .binning import (
    BinGrid,
    BinnedDistribution,
    HistogramDensity,
    apply_inefficiency,
    histogram_density,
    sample_into_bins,
)
from .criteria import (
    a_characteristic,
    check_inefficiency,
    check_prop1,
    check_prop2,
    check_pure,
    check_shannon,
    check_tsallis,
    positivity_border,
    q_characteristic,
)

__version__ = "0.1.0"
