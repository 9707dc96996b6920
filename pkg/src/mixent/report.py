"""Label-sandwich bounds and the offset-calibrated, clipped entropy estimate.

The mixture entropy always satisfies h(X|C) <= h(X) <= h(X|C) + H(C).  The
Jensen/overlap functional h_L is a deterministic lower bound computed from
pairwise overlaps; adding the weight-averaged Shannon-collision offset makes
it exact under complete overlap and under zero cross-overlap, and a final
clip into the sandwich keeps the estimate admissible everywhere.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .entropy import offset, shannon_entropy
from .model import MixtureModel, _check_weights, log2_weighted_sum_exp2
from .overlap import OverlapMatrix, overlap_matrix


@dataclass(frozen=True)
class EntropyReport:
    """Entropy bounds and approximations for one mixture, all in bits."""

    cond_entropy_bits: float
    label_entropy_bits: float
    lower_bits: float
    upper_bits: float
    jensen_bits: float
    mean_offset_bits: float
    approx_bits: float
    clipped_bits: float
    mi_proxy_bits: float

    def to_dict(self) -> dict:
        return asdict(self)


def conditional_entropy(model: MixtureModel) -> float:
    """h(X|C): mixture-weighted component entropy, in bits."""
    # fsum: exactly-rounded, so equal components average to h(f) bit for bit.
    return math.fsum(w * shannon_entropy(c) for w, c in zip(model.weights, model.components))


def label_entropy(weights) -> float:
    """H(C) = -sum pi log2 pi, in bits."""
    w = np.asarray(weights, dtype=float)
    _check_weights(w)
    return -math.fsum(p * lp for p, lp in zip(w, np.log2(w)))


def jensen_lower(model: MixtureModel, overlaps: OverlapMatrix) -> float:
    """Jensen/overlap lower bound h_L = -sum_c pi_c log2(sum_d pi_d z_cd)."""
    rows = log2_weighted_sum_exp2(overlaps.log2_z, model.weights, axis=1)
    if not np.isfinite(rows).all():
        raise ValueError("overlap matrix has an all-zero row; model cannot be valid")
    return -math.fsum(w * r for w, r in zip(model.weights, rows))


def mean_offset(model: MixtureModel) -> float:
    """Weight-averaged Shannon-collision offset; hybrids average per component."""
    return math.fsum(w * offset(c) for w, c in zip(model.weights, model.components))


def approximate(model: MixtureModel) -> EntropyReport:
    """Full entropy report: sandwich bounds, Jensen bound, offset-calibrated
    estimate, its clipped version, and the implied mutual-information proxy."""
    cond = conditional_entropy(model)
    label = label_entropy(model.weights)
    lower = cond
    upper = cond + label
    jensen = jensen_lower(model, overlap_matrix(model))
    delta_bar = mean_offset(model)
    approx = jensen + delta_bar
    clipped = min(max(approx, lower), upper)
    # Clamp: (cond + label) - cond may overshoot label by an ulp.
    mi_proxy = min(max(clipped - cond, 0.0), label)
    return EntropyReport(
        cond_entropy_bits=cond,
        label_entropy_bits=label,
        lower_bits=lower,
        upper_bits=upper,
        jensen_bits=jensen,
        mean_offset_bits=delta_bar,
        approx_bits=approx,
        clipped_bits=clipped,
        mi_proxy_bits=mi_proxy,
    )
