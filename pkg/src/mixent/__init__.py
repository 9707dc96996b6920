"""Deterministic bounds and closed-form approximations for the differential
entropy of finite mixtures (Gaussian / factorized-Laplacian / uniform-box
components and their hybrids), with a seeded Monte Carlo reference estimator
and a separation-sweep experiment harness.  All entropies are in bits."""

from .entropy import (
    OFFSET_UNIT_BITS,
    ComponentEntropyProfile,
    collision_entropy,
    component_profile,
    offset,
    shannon_entropy,
)
from .exceptions import (
    DimensionMismatch,
    MixtureError,
    NonDiagonalCovariance,
    NonFiniteLogDensity,
    NonPositiveScale,
    NotPositiveDefinite,
    SpecFormatError,
    ToleranceNotReached,
    WeightError,
)
from .model import (
    ComponentDensity,
    FactorizedLaplacian,
    Gaussian,
    MixtureModel,
    UniformBox,
    component_log2_pdf,
    load_mixture,
    log2_pdf,
    mixture_from_dict,
    sample,
    validate,
)
from .montecarlo import McEstimate, estimate
from .overlap import OverlapMatrix, log2_overlap, overlap_matrix
from .quadoracle import QuadResult, entropy_1d, overlap_1d
from .report import (
    EntropyReport,
    approximate,
    conditional_entropy,
    jensen_lower,
    label_entropy,
    mean_offset,
)
from .sweep import (
    SweepResult,
    SweepRow,
    SweepSpec,
    build_mixture,
    load_sweep_spec,
    run_sweep,
    sweep_spec_from_dict,
)

__version__ = "0.1.0"

__all__ = [
    "OFFSET_UNIT_BITS",
    "ComponentDensity",
    "ComponentEntropyProfile",
    "DimensionMismatch",
    "EntropyReport",
    "FactorizedLaplacian",
    "Gaussian",
    "McEstimate",
    "MixtureError",
    "MixtureModel",
    "NonDiagonalCovariance",
    "NonFiniteLogDensity",
    "NonPositiveScale",
    "NotPositiveDefinite",
    "OverlapMatrix",
    "QuadResult",
    "SpecFormatError",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "ToleranceNotReached",
    "UniformBox",
    "WeightError",
    "approximate",
    "build_mixture",
    "collision_entropy",
    "component_log2_pdf",
    "component_profile",
    "conditional_entropy",
    "entropy_1d",
    "estimate",
    "jensen_lower",
    "label_entropy",
    "load_mixture",
    "load_sweep_spec",
    "log2_overlap",
    "log2_pdf",
    "mean_offset",
    "mixture_from_dict",
    "offset",
    "overlap_1d",
    "overlap_matrix",
    "run_sweep",
    "sample",
    "shannon_entropy",
    "sweep_spec_from_dict",
    "validate",
]
