"""Independent 1-D quadrature oracles for overlap integrals and entropies.

These brute-force references generate ground truth for the closed-form
kernels and never share code with them.  The overlap oracle integrates the
product density in a mode-shifted frame: the product of any two supported
densities is log-concave, so its mode is bracketed between the two location
parameters (clipped to box supports), found by golden-section search, and
the integrand exp(g(x) - g(x*)) is integrated adaptively (Gauss-Kronrod)
over the window where g stays within 80 nats of the mode.  This keeps the
oracle accurate in a relative sense even when the overlap is far below
double-precision underflow of intermediate terms.  Box supports are exact
hard bounds; density kinks (box edges, Laplace locations) split the
integration panels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .exceptions import DimensionMismatch, ToleranceNotReached
from .model import ComponentDensity, FactorizedLaplacian, Gaussian, UniformBox

_LN2 = math.log(2.0)
_LN_2PI = math.log(2.0 * math.pi)

#: Integration stops once the log-integrand has dropped this far below the
#: mode; exp(-80) ~ 2e-35 bounds the relative truncation well under 1e-8.
_LOG_DROP = 80.0

#: Effective-support half-widths for unbounded families (truncated mass < 1e-30).
_GAUSS_SUPPORT_SIGMAS = 12.0
_LAPLACE_SUPPORT_SCALES = 40.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _require_1d(component: ComponentDensity) -> None:
    if component.dimension != 1:
        raise DimensionMismatch(
            f"quadrature oracle is one-dimensional, component has n={component.dimension}"
        )


def _log_density(component: ComponentDensity):
    """Scalar natural-log density function for a 1-D component."""
    if isinstance(component, Gaussian):
        mu = float(component.mean[0])
        var = float(component.covariance[0, 0])
        const = -0.5 * (_LN_2PI + math.log(var))

        def logf(x: float) -> float:
            return const - 0.5 * (x - mu) ** 2 / var

    elif isinstance(component, FactorizedLaplacian):
        mu = float(component.location[0])
        b = float(component.scale[0])
        const = -math.log(2.0 * b)

        def logf(x: float) -> float:
            return const - abs(x - mu) / b

    elif isinstance(component, UniformBox):
        lo = float(component.lower[0])
        hi = float(component.upper[0])
        const = -math.log(hi - lo)

        def logf(x: float) -> float:
            return const if lo <= x <= hi else -math.inf

    else:
        raise TypeError(f"unsupported component type {type(component).__name__}")
    return logf


def _hard_bounds(component: ComponentDensity) -> tuple[float, float]:
    if isinstance(component, UniformBox):
        return float(component.lower[0]), float(component.upper[0])
    return -math.inf, math.inf


def _soft_bounds(component: ComponentDensity) -> tuple[float, float]:
    if isinstance(component, Gaussian):
        mu = float(component.mean[0])
        w = _GAUSS_SUPPORT_SIGMAS * math.sqrt(float(component.covariance[0, 0]))
        return mu - w, mu + w
    if isinstance(component, FactorizedLaplacian):
        mu = float(component.location[0])
        w = _LAPLACE_SUPPORT_SCALES * float(component.scale[0])
        return mu - w, mu + w
    return _hard_bounds(component)


def _kinks(component: ComponentDensity) -> tuple[float, ...]:
    if isinstance(component, FactorizedLaplacian):
        return (float(component.location[0]),)
    if isinstance(component, UniformBox):
        return (float(component.lower[0]), float(component.upper[0]))
    return ()


def _center(component: ComponentDensity) -> float:
    if isinstance(component, Gaussian):
        return float(component.mean[0])
    if isinstance(component, FactorizedLaplacian):
        return float(component.location[0])
    return float(component.center[0])


def _feature_scale(component: ComponentDensity) -> float:
    if isinstance(component, Gaussian):
        return math.sqrt(float(component.covariance[0, 0]))
    if isinstance(component, FactorizedLaplacian):
        return float(component.scale[0])
    return float(component.half_width[0])


def _golden_max(fn, lo: float, hi: float, iterations: int = 90) -> float:
    """Argmax of a unimodal function on [lo, hi] (kinks and plateaus are fine)."""
    if hi <= lo:
        return lo
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
        if b - a <= 1e-14 * max(1.0, abs(a), abs(b)):
            break
    return 0.5 * (a + b)


def _expand_until_drop(fn, x_star: float, g_star: float, step0: float,
                       bound: float, direction: float) -> float:
    """Walk away from the mode (doubling steps) until fn drops _LOG_DROP nats
    below g_star or the hard bound is reached."""
    step = step0
    edge = x_star
    for _ in range(260):
        edge = x_star + direction * step
        if direction < 0 and edge <= bound:
            return bound
        if direction > 0 and edge >= bound:
            return bound
        if fn(edge) <= g_star - _LOG_DROP:
            return edge
        step *= 2.0
    return edge


def _interior_points(primary: tuple, extra: tuple, lo: float, hi: float) -> list[float]:
    """Strictly interior breakpoints; `extra` points (e.g. the mode found by
    golden-section) are dropped when they nearly coincide with a primary kink
    or another point, since QUADPACK cannot subdivide a ~1-ulp panel."""
    out: list[float] = []
    for p in sorted(primary) + sorted(extra):
        gap = 1e-9 * max(1.0, abs(p))
        if p - lo <= gap or hi - p <= gap:
            continue
        if any(abs(p - q) <= gap for q in out):
            continue
        out.append(p)
    return sorted(out)


def overlap_1d(f: ComponentDensity, g: ComponentDensity, tol: float) -> QuadResult:
    """Adaptive quadrature of the product density f*g over the real line.

    Absolute error of the returned value is at most `tol` (checked against
    the integrator's own estimate), and the relative error is ~1e-13
    whenever the overlap is representable.  Disjoint box supports give an
    exact zero.
    """
    _require_1d(f)
    _require_1d(g)
    evaluations = 0

    log_f = _log_density(f)
    log_g = _log_density(g)

    def log_product(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return log_f(x) + log_g(x)

    hard_lo = max(_hard_bounds(f)[0], _hard_bounds(g)[0])
    hard_hi = min(_hard_bounds(f)[1], _hard_bounds(g)[1])
    if hard_lo >= hard_hi:
        return QuadResult(value=0.0, abs_error_estimate=0.0, evaluations=1)

    def clip(x: float) -> float:
        return min(max(x, hard_lo), hard_hi)

    bracket = sorted((clip(_center(f)), clip(_center(g))))
    x_star = _golden_max(log_product, bracket[0], bracket[1])
    g_star = log_product(x_star)

    step0 = 1e-3 * min(_feature_scale(f), _feature_scale(g))
    lo = _expand_until_drop(log_product, x_star, g_star, step0, hard_lo, -1.0)
    hi = _expand_until_drop(log_product, x_star, g_star, step0, hard_hi, +1.0)
    if lo >= hi:
        return QuadResult(value=0.0, abs_error_estimate=0.0, evaluations=evaluations)

    breakpoints = _interior_points(_kinks(f) + _kinks(g), (x_star,), lo, hi)

    def integrand(x: float) -> float:
        return math.exp(log_product(x) - g_star)

    result = quad(
        integrand,
        lo,
        hi,
        points=breakpoints or None,
        epsabs=0.0,
        epsrel=1e-13,
        limit=500,
        full_output=True,
    )
    shifted_value, shifted_err = result[0], result[1]
    if shifted_value > 0.0:
        value = math.exp(g_star + math.log(shifted_value))
        error = math.exp(g_star + math.log(max(shifted_err, 1e-320)))
    else:
        value, error = 0.0, 0.0
    if error > tol:
        raise ToleranceNotReached(
            f"overlap quadrature error estimate {error:.3e} exceeds tol {tol:.3e}"
        )
    return QuadResult(value=value, abs_error_estimate=error, evaluations=evaluations)


def entropy_1d(f: ComponentDensity, tol: float) -> QuadResult:
    """Adaptive quadrature of -f log2 f over the effective support."""
    _require_1d(f)
    evaluations = 0
    log_f = _log_density(f)

    def integrand(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        t = log_f(x)
        if t == -math.inf:
            return 0.0
        return -math.exp(t) * t / _LN2

    lo, hi = _soft_bounds(f)
    breakpoints = _interior_points(_kinks(f), (), lo, hi)
    result = quad(
        integrand,
        lo,
        hi,
        points=breakpoints or None,
        epsabs=tol,
        epsrel=1e-13,
        limit=500,
        full_output=True,
    )
    value, error = result[0], result[1]
    if error > tol:
        raise ToleranceNotReached(
            f"entropy quadrature error estimate {error:.3e} exceeds tol {tol:.3e}"
        )
    return QuadResult(value=value, abs_error_estimate=error, evaluations=evaluations)
