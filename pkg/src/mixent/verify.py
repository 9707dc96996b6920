"""Closed-form kernels versus the quadrature oracle on random 1-D draws.

For each unordered family pair, draws random parameters (locations uniform
on [-10, 10], scales log-uniform on [0.1, 10]), evaluates the closed-form
overlap and the independent quadrature oracle, and tracks the worst relative
disagreement |closed - quad| / max(closed, quad, 1e-300).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import FactorizedLaplacian, Gaussian, UniformBox
from .overlap import log2_overlap
from .quadoracle import overlap_1d
from .rng import stream

FAMILY_PAIRS = ("GG", "LL", "UU", "GL", "GU", "LU")

_QUAD_TOL = 1e-12
_REL_FLOOR = 1e-300

_LOC_RANGE = (-10.0, 10.0)
_SCALE_RANGE = (0.1, 10.0)


@dataclass(frozen=True)
class PairReport:
    pair: str
    trials: int
    max_rel_error: float
    worst_params: tuple


def _draw_component(kind: str, rng: np.random.Generator):
    loc = rng.uniform(*_LOC_RANGE)
    scale = math.exp(rng.uniform(math.log(_SCALE_RANGE[0]), math.log(_SCALE_RANGE[1])))
    if kind == "G":
        return Gaussian(mean=[loc], covariance=[[scale**2]])
    if kind == "L":
        return FactorizedLaplacian(location=[loc], scale=[scale])
    return UniformBox(center=[loc], half_width=[scale])


def compare_pair(pair: str, trials: int, seed: int) -> PairReport:
    """Run `trials` random closed-form vs oracle comparisons for one pair."""
    rng = stream(seed, FAMILY_PAIRS.index(pair))
    worst = 0.0
    worst_params: tuple = ()
    for _ in range(trials):
        f = _draw_component(pair[0], rng)
        g = _draw_component(pair[1], rng)
        closed = float(np.exp2(log2_overlap(f, g)))
        oracle = overlap_1d(f, g, tol=_QUAD_TOL).value
        rel = abs(closed - oracle) / max(closed, oracle, _REL_FLOOR)
        if rel > worst:
            worst = rel
            worst_params = (f, g, closed, oracle)
    return PairReport(pair=pair, trials=trials, max_rel_error=worst, worst_params=worst_params)


def verify_overlaps(trials: int, seed: int) -> list[PairReport]:
    """Oracle-equivalence sweep over all six unordered family pairs."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    return [compare_pair(pair, trials, seed) for pair in FAMILY_PAIRS]
