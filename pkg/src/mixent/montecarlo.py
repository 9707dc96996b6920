"""Seeded Monte Carlo reference estimator of mixture entropy with standard error.

h_MC = -(1/N) sum_j log2 p(X_j), evaluated in fixed 65536-row chunks whose
RNG streams derive from (seed, chunk index), so serial and parallel schedules
produce identical results.  Accumulation is compensated (Kahan) and streaming:
the full sample matrix is never retained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NonFiniteLogDensity
from .model import MixtureModel, iter_sample_chunks


@dataclass(frozen=True)
class McEstimate:
    entropy_bits: float
    std_error_bits: float
    sample_count: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "h_mc": self.entropy_bits,
            "se": self.std_error_bits,
            "samples": self.sample_count,
            "seed": self.seed,
        }


class _Kahan:
    """Compensated accumulator for long sums of chunk partials."""

    __slots__ = ("total", "carry")

    def __init__(self):
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        y = value - self.carry
        t = self.total + y
        self.carry = (t - self.total) - y
        self.total = t


def estimate(model: MixtureModel, samples: int, seed: int) -> McEstimate:
    """Monte Carlo entropy estimate over `samples` i.i.d. draws.

    The standard error uses the unbiased (N-1) variance of the per-sample
    -log2 p values.  Raises NonFiniteLogDensity if a draw lands outside all
    supports, which cannot happen for a valid model.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples for a standard error, got {samples}")
    acc = _Kahan()
    acc_sq = _Kahan()
    pivot = None
    for block in iter_sample_chunks(model, samples, seed):
        values = -model.log2_pdf_rows(block)
        if not np.isfinite(values).all():
            raise NonFiniteLogDensity(
                "sampled point has zero mixture density; model supports are inconsistent"
            )
        if pivot is None:
            # Accumulating deviations from the first value keeps constant
            # log-densities (uniform boxes) exact: mean == pivot, SE == 0.
            pivot = float(values[0])
        dev = values - pivot
        acc.add(float(np.sum(dev)))
        acc_sq.add(float(np.dot(dev, dev)))
    n = float(samples)
    mean = pivot + acc.total / n
    variance = max(acc_sq.total - acc.total * (acc.total / n), 0.0) / (n - 1.0)
    return McEstimate(
        entropy_bits=mean,
        std_error_bits=math.sqrt(variance / n),
        sample_count=samples,
        seed=seed,
    )
