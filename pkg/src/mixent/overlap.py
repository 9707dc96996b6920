"""Closed-form log-domain pairwise overlap integrals z = integral of f*g.

All six unordered family pairs are covered.  Kernels work per coordinate in
the natural-log domain and convert to bits once at the end; -inf encodes an
exactly-zero overlap (disjoint boxes).  Cross pairs involving a Gaussian
(Gaussian-uniform, Gaussian-Laplacian) require a diagonal covariance.

Numerical notes, all load-bearing:
  * Laplace-Laplace uses the equal-scale branch (the analytic limit) when
    the scales agree to 1e-6 relative; the unequal branch is evaluated as
    A + log1p(-exp(B - A)) with A > B, which is free of 0/0 cancellation.
  * Normal and Laplace interval probabilities are computed as
    tail-complement differences (via log_ndtr / expm1) when both endpoints
    sit in the same tail, avoiding 1 - 1 cancellation at large separation.
  * Gaussian-Laplace bracket terms have the shape exp(A) * Phi(B) with A
    large-positive while B is large-negative; they are evaluated as
    exp(A + logPhi(B)) with a deep-tail-safe logPhi (scipy log_ndtr).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import erf, log_ndtr

from .entropy import collision_entropy
from .exceptions import DimensionMismatch, NonDiagonalCovariance
from .model import (
    ComponentDensity,
    FactorizedLaplacian,
    Gaussian,
    MixtureModel,
    UniformBox,
)

_LN2 = math.log(2.0)
_LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class OverlapMatrix:
    """K x K matrix of log2 z entries (-inf allowed, never NaN)."""

    log2_z: np.ndarray
    dimension: int
    count: int


def _diagonal_sigmas(component: Gaussian) -> np.ndarray:
    cov = component.covariance
    diag = np.diag(cov)
    off = np.abs(cov - np.diag(diag)).max() if component.dimension > 1 else 0.0
    if off > 1e-12 * max(diag.max(), np.finfo(float).tiny):
        raise NonDiagonalCovariance(
            "Gaussian-uniform and Gaussian-Laplacian overlaps require a diagonal covariance"
        )
    return np.sqrt(diag)


def _log2_gauss_gauss(f: Gaussian, g: Gaussian) -> float:
    # z = normal density of (mu_f - mu_g) at 0 under covariance Sig_f + Sig_g.
    total = f.covariance + g.covariance
    L = np.linalg.cholesky(total)
    delta = f.mean - g.mean
    y = solve_triangular(L, delta, lower=True)
    ln_det = 2.0 * float(np.sum(np.log(np.diag(L))))
    return -0.5 * (f.dimension * _LN_2PI + ln_det + float(y @ y)) / _LN2


def _ln_lap_lap_1d(delta: np.ndarray, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    hi = np.maximum(s1, s2)
    lo = np.minimum(s1, s2)
    near = (hi - lo) <= 1e-6 * hi

    out = np.empty_like(delta)

    s = 0.5 * (s1 + s2)
    r = delta / s
    out[near] = (-r + np.log1p(r) - np.log(4.0 * s))[near]

    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.log(hi) - delta / hi
        b = np.log(lo) - delta / lo
        unequal = a + np.log1p(-np.exp(b - a)) - (_LN2 + np.log(hi - lo) + np.log(hi + lo))
    out[~near] = unequal[~near]
    return out


def _log2_lap_lap(f: FactorizedLaplacian, g: FactorizedLaplacian) -> float:
    delta = np.abs(f.location - g.location)
    return float(np.sum(_ln_lap_lap_1d(delta, f.scale, g.scale))) / _LN2


def _log2_box_box(f: UniformBox, g: UniformBox) -> float:
    # Intersection length per coordinate from centers and half-widths:
    # min(a1, d + a2) + min(a1, a2 - d), d = |c1 - c2|.  Exactly 2*min(a1, a2)
    # for coincident centers, which keeps identical-box self-overlaps equal to
    # the closed-form collision entropy bit for bit.
    d = np.abs(f.center - g.center)
    a1, a2 = f.half_width, g.half_width
    length = np.minimum(a1, d + a2) + np.minimum(a1, a2 - d)
    if (length <= 0).any():
        return -np.inf
    return float(np.sum(np.log2(length))) - f.log2_volume() - g.log2_volume()


def _ln_normal_interval(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """ln(Phi(beta) - Phi(alpha)) elementwise, stable in either tail."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    out = np.empty_like(alpha)

    right = alpha >= 0  # both endpoints in the right tail: survival difference
    if right.any():
        la = log_ndtr(-alpha[right])
        lb = log_ndtr(-beta[right])
        out[right] = la + np.log(-np.expm1(lb - la))

    left = beta <= 0
    if left.any():
        lb = log_ndtr(beta[left])
        la = log_ndtr(alpha[left])
        out[left] = lb + np.log(-np.expm1(la - lb))

    mid = ~(right | left)  # interval straddles 0: erf terms add, no cancellation
    if mid.any():
        p = 0.5 * (erf(beta[mid] / math.sqrt(2.0)) + erf(-alpha[mid] / math.sqrt(2.0)))
        out[mid] = np.log(p)
    return out


def _log2_gauss_box(f: Gaussian, g: UniformBox) -> float:
    sigma = _diagonal_sigmas(f)
    alpha = (g.lower - f.mean) / sigma
    beta = (g.upper - f.mean) / sigma
    return float(np.sum(_ln_normal_interval(alpha, beta))) / _LN2 - g.log2_volume()


def _ln_laplace_interval(t_lo: np.ndarray, t_hi: np.ndarray) -> np.ndarray:
    """ln(F(t_hi) - F(t_lo)) for the standard Laplace CDF, stable in either tail."""
    out = np.empty_like(t_lo)

    left = t_hi <= 0
    if left.any():
        out[left] = t_hi[left] - _LN2 + np.log(-np.expm1(t_lo[left] - t_hi[left]))

    right = t_lo >= 0
    if right.any():
        out[right] = -t_lo[right] - _LN2 + np.log(-np.expm1(t_lo[right] - t_hi[right]))

    mid = ~(left | right)
    if mid.any():
        out[mid] = np.log(-(np.expm1(t_lo[mid]) + np.expm1(-t_hi[mid]))) - _LN2
    return out


def _log2_lap_box(f: FactorizedLaplacian, g: UniformBox) -> float:
    t_lo = (g.lower - f.location) / f.scale
    t_hi = (g.upper - f.location) / f.scale
    return float(np.sum(_ln_laplace_interval(t_lo, t_hi))) / _LN2 - g.log2_volume()


def _log2_gauss_lap(f: Gaussian, g: FactorizedLaplacian) -> float:
    # Per coordinate, with delta = mu_gauss - mu_lap:
    #   z = e^{s^2/(2b^2)}/(2b) * [ e^{-d/b} Phi((d - s^2/b)/s)
    #                             + e^{ d/b} Phi((-d - s^2/b)/s) ].
    sigma = _diagonal_sigmas(f)
    b = g.scale
    delta = f.mean - g.location
    ratio = sigma / b
    term_pos = -delta / b + log_ndtr((delta - sigma * ratio) / sigma)
    term_neg = delta / b + log_ndtr((-delta - sigma * ratio) / sigma)
    ln_z = -np.log(2.0 * b) + 0.5 * ratio**2 + np.logaddexp(term_pos, term_neg)
    return float(np.sum(ln_z)) / _LN2


_KERNELS = {
    (Gaussian, Gaussian): _log2_gauss_gauss,
    (FactorizedLaplacian, FactorizedLaplacian): _log2_lap_lap,
    (UniformBox, UniformBox): _log2_box_box,
    (Gaussian, UniformBox): _log2_gauss_box,
    (FactorizedLaplacian, UniformBox): _log2_lap_box,
    (Gaussian, FactorizedLaplacian): _log2_gauss_lap,
}


def log2_overlap(f: ComponentDensity, g: ComponentDensity) -> float:
    """log2 of the overlap integral of two component densities (-inf if zero)."""
    if f.dimension != g.dimension:
        raise DimensionMismatch(
            f"components have dimensions {f.dimension} and {g.dimension}"
        )
    kernel = _KERNELS.get((type(f), type(g)))
    if kernel is not None:
        return kernel(f, g)
    kernel = _KERNELS.get((type(g), type(f)))
    if kernel is None:
        raise TypeError(f"unsupported pair {type(f).__name__}/{type(g).__name__}")
    return kernel(g, f)


def overlap_matrix(model: MixtureModel) -> OverlapMatrix:
    """All pairwise log2 overlaps; each unordered pair is evaluated once and
    mirrored, so the matrix is exactly symmetric."""
    k = model.num_components
    log2_z = np.empty((k, k))
    for c in range(k):
        for d in range(c, k):
            value = log2_overlap(model.components[c], model.components[d])
            log2_z[c, d] = value
            log2_z[d, c] = value
    return OverlapMatrix(log2_z=log2_z, dimension=model.dimension, count=k)


def self_log2_overlap(component: ComponentDensity) -> float:
    """Diagonal entry: log2 z_{c,c} = -h2(f_c)."""
    return -collision_entropy(component)
