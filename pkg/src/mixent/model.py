"""Mixture models with Gaussian, factorized-Laplacian, and uniform-box components.

Defines the component parameter types and the mixture container, validates
them, evaluates base-2 log-densities via log-sum-exp, and draws seeded,
reproducible samples.  All log quantities throughout the package are in bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import (
    DimensionMismatch,
    NonPositiveScale,
    NotPositiveDefinite,
    SpecFormatError,
    WeightError,
)
from .rng import stream

_LOG2_2PI = math.log2(2.0 * math.pi)
_LOG2E = math.log2(math.e)

#: Rows are sampled in fixed-size blocks; block i consumes stream (seed, i).
SAMPLE_CHUNK = 65536


def _as_vector(x, name: str) -> np.ndarray:
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"{name} must be a non-empty 1-D vector, got shape {v.shape}")
    v.flags.writeable = False
    return v


def _cholesky(cov: np.ndarray) -> np.ndarray:
    """Lower triangular factor of a covariance; pivots > 0 or NotPositiveDefinite."""
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"covariance is not positive definite: {exc}") from exc


@dataclass(frozen=True)
class Gaussian:
    """Multivariate normal component with full covariance.

    Parameters
    ----------
    mean : array_like, shape (n,)
    covariance : array_like, shape (n, n)
        Symmetric positive definite.  A diagonal covariance is representable
        as a full matrix; cross-family overlap kernels check diagonality
        themselves.
    """

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = _as_vector(self.mean, "mean")
        cov = np.array(self.covariance, dtype=float)
        if cov.shape != (mean.size, mean.size):
            raise DimensionMismatch(
                f"covariance shape {cov.shape} does not match mean length {mean.size}"
            )
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dimension(self) -> int:
        return self.mean.size

    def validate(self) -> None:
        cov = self.covariance
        scale = np.abs(cov).max()
        if not np.isfinite(cov).all():
            raise NotPositiveDefinite("covariance contains non-finite entries")
        if np.abs(cov - cov.T).max() > 1e-12 * max(scale, np.finfo(float).tiny):
            raise NotPositiveDefinite("covariance is not symmetric")
        _cholesky(cov)

    def chol(self) -> np.ndarray:
        return _cholesky(self.covariance)

    def log2_pdf_rows(self, X: np.ndarray) -> np.ndarray:
        L = self.chol()
        dev = X - self.mean
        z = solve_triangular(L, dev.T, lower=True)
        quad = np.einsum("ij,ij->j", z, z)
        log2_det = 2.0 * np.sum(np.log2(np.diag(L)))
        return -0.5 * (self.dimension * _LOG2_2PI + log2_det + quad * _LOG2E)

    def sample_rows(self, rng: np.random.Generator, count: int) -> np.ndarray:
        z = rng.standard_normal((count, self.dimension))
        return self.mean + z @ self.chol().T


@dataclass(frozen=True)
class FactorizedLaplacian:
    """Product of independent Laplace coordinates with per-coordinate scales."""

    location: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        loc = _as_vector(self.location, "location")
        scale = _as_vector(self.scale, "scale")
        if scale.size != loc.size:
            raise DimensionMismatch(
                f"scale length {scale.size} does not match location length {loc.size}"
            )
        object.__setattr__(self, "location", loc)
        object.__setattr__(self, "scale", scale)

    @property
    def dimension(self) -> int:
        return self.location.size

    def validate(self) -> None:
        if not (np.isfinite(self.scale).all() and (self.scale > 0).all()):
            raise NonPositiveScale("Laplacian scales must be strictly positive")

    def log2_pdf_rows(self, X: np.ndarray) -> np.ndarray:
        const = np.sum(np.log2(2.0 * self.scale))
        l1 = np.sum(np.abs(X - self.location) / self.scale, axis=1)
        return -const - l1 * _LOG2E

    def sample_rows(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # Inverse CDF: x = loc - b * sign(v) * ln(1 - 2|v|), v = u - 1/2.
        v = rng.random((count, self.dimension)) - 0.5
        w = np.maximum(1.0 - 2.0 * np.abs(v), np.finfo(float).tiny)
        return self.location - self.scale * np.sign(v) * np.log(w)


@dataclass(frozen=True)
class UniformBox:
    """Uniform density on an axis-aligned box center + prod [-a_i, a_i]."""

    center: np.ndarray
    half_width: np.ndarray

    def __post_init__(self):
        center = _as_vector(self.center, "center")
        half = _as_vector(self.half_width, "half_width")
        if half.size != center.size:
            raise DimensionMismatch(
                f"half_width length {half.size} does not match center length {center.size}"
            )
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "half_width", half)

    @property
    def dimension(self) -> int:
        return self.center.size

    @property
    def lower(self) -> np.ndarray:
        return self.center - self.half_width

    @property
    def upper(self) -> np.ndarray:
        return self.center + self.half_width

    def validate(self) -> None:
        if not (np.isfinite(self.half_width).all() and (self.half_width > 0).all()):
            raise NonPositiveScale("box half-widths must be strictly positive")

    def log2_volume(self) -> float:
        return float(np.sum(np.log2(2.0 * self.half_width)))

    def log2_pdf_rows(self, X: np.ndarray) -> np.ndarray:
        inside = (np.abs(X - self.center) <= self.half_width).all(axis=1)
        return np.where(inside, -self.log2_volume(), -np.inf)

    def sample_rows(self, rng: np.random.Generator, count: int) -> np.ndarray:
        u = rng.random((count, self.dimension))
        return self.center + self.half_width * (2.0 * u - 1.0)


ComponentDensity = Gaussian | FactorizedLaplacian | UniformBox


def _check_weights(weights: np.ndarray) -> None:
    if weights.ndim != 1 or weights.size == 0:
        raise WeightError(f"weights must be a non-empty vector, got shape {weights.shape}")
    if not np.isfinite(weights).all() or (weights <= 0).any():
        raise WeightError("all mixture weights must be strictly positive")
    total = float(np.sum(weights))
    if abs(total - 1.0) > 1e-12:
        raise WeightError(f"weights must sum to 1 (got {total!r}); no silent renormalization")


@dataclass(frozen=True)
class MixtureModel:
    """Finite mixture: weights pi plus K components of common dimension n.

    Immutable after construction and safe to share across threads; sampling
    takes its seed explicitly, so there is no hidden RNG state.
    """

    weights: np.ndarray
    components: tuple
    dimension: int | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.flags.writeable = False
        comps = tuple(self.components)
        if not comps:
            raise DimensionMismatch("a mixture needs at least one component")
        dim = self.dimension if self.dimension is not None else comps[0].dimension
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "dimension", int(dim))

    @property
    def num_components(self) -> int:
        return len(self.components)

    def validate(self) -> None:
        _check_weights(self.weights)
        if self.weights.size != len(self.components):
            raise DimensionMismatch(
                f"{self.weights.size} weights for {len(self.components)} components"
            )
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be a positive integer")
        for i, comp in enumerate(self.components):
            if comp.dimension != self.dimension:
                raise DimensionMismatch(
                    f"component {i} has dimension {comp.dimension}, expected {self.dimension}"
                )
            comp.validate()

    def log2_pdf_rows(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise DimensionMismatch(
                f"expected rows of length {self.dimension}, got shape {X.shape}"
            )
        per_comp = np.stack([c.log2_pdf_rows(X) for c in self.components])
        return log2_weighted_sum_exp2(per_comp, self.weights, axis=0)


def log2_weighted_sum_exp2(a: np.ndarray, weights: np.ndarray, axis: int = 0) -> np.ndarray:
    """log2 of sum_c w_c * 2^a_c, shifted by max a_c; -inf entries are absent
    terms.  Keeping the weights in the linear domain avoids a lossy
    (x - log2 w) + log2 w round trip, so complete-overlap and zero-overlap
    mixtures reduce exactly."""
    a = np.moveaxis(a, axis, 0)
    top = np.max(a, axis=0)
    shift = np.where(np.isneginf(top), 0.0, top)
    with np.errstate(invalid="ignore"):
        total = np.tensordot(weights, np.exp2(a - shift[None, ...]), axes=1)
    with np.errstate(divide="ignore"):
        out = shift + np.log2(total)
    return np.where(np.isneginf(top), -np.inf, out)


def validate(model: MixtureModel) -> None:
    """Raise WeightError / DimensionMismatch / NotPositiveDefinite /
    NonPositiveScale unless every model invariant holds."""
    model.validate()


def component_log2_pdf(component: ComponentDensity, x) -> float:
    """Base-2 log-density of one component at a point (-inf outside a box)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != component.dimension:
        raise DimensionMismatch(
            f"point has shape {x.shape}, component dimension is {component.dimension}"
        )
    return float(component.log2_pdf_rows(x[None, :])[0])


def log2_pdf(model: MixtureModel, x) -> float:
    """Base-2 log of the mixture density, computed by log-sum-exp over
    per-component log-densities; -inf outside the union of supports."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != model.dimension:
        raise DimensionMismatch(f"point has shape {x.shape}, model dimension is {model.dimension}")
    return float(model.log2_pdf_rows(x[None, :])[0])


def _sample_chunk(model: MixtureModel, count: int, rng: np.random.Generator) -> np.ndarray:
    labels = rng.choice(model.num_components, size=count, p=model.weights)
    out = np.empty((count, model.dimension))
    for c, comp in enumerate(model.components):
        idx = labels == c
        hits = int(idx.sum())
        if hits:
            out[idx] = comp.sample_rows(rng, hits)
    return out


def iter_sample_chunks(model: MixtureModel, count: int, seed: int):
    """Yield sample blocks of at most SAMPLE_CHUNK rows; block i is drawn
    from stream (seed, i), independent of how many blocks follow."""
    for i, start in enumerate(range(0, count, SAMPLE_CHUNK)):
        size = min(SAMPLE_CHUNK, count - start)
        yield _sample_chunk(model, size, stream(seed, i))


def sample(model: MixtureModel, count: int, seed: int) -> np.ndarray:
    """Draw `count` rows from the mixture, deterministically in (model, count, seed)."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return np.concatenate(list(iter_sample_chunks(model, count, seed)), axis=0)


# -- mixture specification files (JSON) -------------------------------------

_COMPONENT_KINDS = ("gaussian", "laplacian", "uniform_box")


def _field(entry: dict, key: str, kind: str):
    if key not in entry:
        raise SpecFormatError(f"{kind} component is missing field '{key}'")
    return entry[key]


def _component_from_dict(entry: dict, dimension: int) -> ComponentDensity:
    kind = entry.get("kind")
    if kind not in _COMPONENT_KINDS:
        raise SpecFormatError(f"unknown component kind {kind!r}; expected one of {_COMPONENT_KINDS}")
    if kind == "gaussian":
        mean = _as_vector(_field(entry, "mean", kind), "mean")
        cov = _field(entry, "cov", kind)
        if isinstance(cov, dict):
            if set(cov) != {"diag"}:
                raise SpecFormatError("gaussian cov object must be {'diag': [...]}")
            cov = np.diag(_as_vector(cov["diag"], "cov diag"))
        comp = Gaussian(mean=mean, covariance=np.asarray(cov, dtype=float))
    elif kind == "laplacian":
        comp = FactorizedLaplacian(
            location=_field(entry, "location", kind), scale=_field(entry, "scale", kind)
        )
    else:
        comp = UniformBox(
            center=_field(entry, "center", kind), half_width=_field(entry, "half_width", kind)
        )
    if comp.dimension != dimension:
        raise DimensionMismatch(
            f"{kind} component has dimension {comp.dimension}, spec says {dimension}"
        )
    return comp


def mixture_from_dict(spec: dict) -> MixtureModel:
    """Build a MixtureModel from the JSON mixture-spec schema (unvalidated)."""
    for key in ("dimension", "weights", "components"):
        if key not in spec:
            raise SpecFormatError(f"mixture spec is missing field '{key}'")
    dimension = spec["dimension"]
    if not isinstance(dimension, int) or dimension < 1:
        raise SpecFormatError(f"dimension must be a positive integer, got {dimension!r}")
    components = tuple(_component_from_dict(e, dimension) for e in spec["components"])
    return MixtureModel(
        weights=np.asarray(spec["weights"], dtype=float),
        components=components,
        dimension=dimension,
    )


def load_mixture(path) -> MixtureModel:
    """Read and fully validate a mixture specification file."""
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    model = mixture_from_dict(spec)
    model.validate()
    return model
