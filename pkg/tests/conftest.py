"""Shared factories for randomized property tests (all seeded)."""

import numpy as np
import pytest

from mixent import FactorizedLaplacian, Gaussian, MixtureModel, UniformBox


def rng_for(seed):
    return np.random.default_rng(seed)


def random_spd(rng, n, scale=1.0):
    a = rng.standard_normal((n, n))
    return scale * (a @ a.T + n * np.eye(n))


def random_component(kind, rng, n, diagonal=False, loc_range=3.0, scale_range=(0.3, 3.0)):
    loc = rng.uniform(-loc_range, loc_range, size=n)
    scales = np.exp(rng.uniform(np.log(scale_range[0]), np.log(scale_range[1]), size=n))
    if kind == "G":
        cov = np.diag(scales**2) if diagonal else random_spd(rng, n, scale=float(scales[0] ** 2))
        return Gaussian(mean=loc, covariance=cov)
    if kind == "L":
        return FactorizedLaplacian(location=loc, scale=scales)
    if kind == "U":
        return UniformBox(center=loc, half_width=scales)
    raise ValueError(kind)


def random_weights(rng, k):
    w = rng.uniform(0.2, 1.0, size=k)
    return w / w.sum()


def random_mixture(rng, n, kinds, diagonal=None):
    """Mixture with one component per letter in `kinds` (e.g. 'GGL')."""
    if diagonal is None:
        diagonal = "U" in kinds or "L" in kinds
    comps = tuple(random_component(k, rng, n, diagonal=diagonal) for k in kinds)
    return MixtureModel(weights=random_weights(rng, len(kinds)), components=comps)


@pytest.fixture
def rng():
    return rng_for(20240817)
