import math

import numpy as np
import pytest

import mixent as mx
from mixent.quadoracle import entropy_1d
from conftest import random_component, rng_for


def test_gaussian_shannon_closed_form():
    g = mx.Gaussian(mean=[0.0], covariance=[[1.0]])
    assert mx.shannon_entropy(g) == pytest.approx(0.5 * math.log2(2 * math.pi * math.e), abs=1e-12)


def test_laplace_shannon_closed_form():
    lap = mx.FactorizedLaplacian(location=[0.0], scale=[1.0 / math.sqrt(2.0)])
    assert mx.shannon_entropy(lap) == pytest.approx(math.log2(math.e * math.sqrt(2.0)), abs=1e-12)


def test_box_shannon_closed_form():
    box = mx.UniformBox(center=[0.0], half_width=[math.sqrt(3.0)])
    assert mx.shannon_entropy(box) == pytest.approx(math.log2(2 * math.sqrt(3.0)), abs=1e-12)


def test_collision_closed_forms():
    g = mx.Gaussian(mean=[0.0], covariance=[[1.0]])
    assert mx.collision_entropy(g) == pytest.approx(0.5 * math.log2(4 * math.pi), abs=1e-12)
    lap = mx.FactorizedLaplacian(location=[0.0], scale=[1.0])
    assert mx.collision_entropy(lap) == 2.0
    unit = mx.UniformBox(center=[0.0], half_width=[0.5])
    assert mx.collision_entropy(unit) == 0.0


def test_offset_constants():
    unit = math.log2(math.e) - 1.0
    g2 = mx.Gaussian(mean=np.zeros(2), covariance=np.eye(2))
    assert mx.offset(g2) == pytest.approx(unit, abs=1e-15)
    l3 = mx.FactorizedLaplacian(location=np.zeros(3), scale=np.ones(3))
    assert mx.offset(l3) == pytest.approx(3 * unit, abs=1e-15)
    assert mx.offset(mx.UniformBox(center=np.zeros(4), half_width=np.ones(4))) == 0.0
    assert unit == pytest.approx(0.4426950408889634, abs=1e-15)


@pytest.mark.parametrize("kind", ["G", "L", "U"])
def test_offset_identity_over_random_draws(kind):
    # h - h2 equals the family constant for scales spanning [1e-3, 1e3].
    rng = rng_for(101)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        comp = random_component(kind, rng, n, diagonal=(kind == "G"), scale_range=(1e-3, 1e3))
        gap = mx.shannon_entropy(comp) - mx.collision_entropy(comp)
        assert abs(gap - mx.offset(comp)) <= 1e-10


@pytest.mark.parametrize("kind", ["G", "L", "U"])
def test_collision_matches_self_overlap(kind):
    rng = rng_for(102)
    for _ in range(200):
        comp = random_component(kind, rng, int(rng.integers(1, 4)))
        assert abs(mx.log2_overlap(comp, comp) + mx.collision_entropy(comp)) <= 1e-10


def test_gaussian_entropy_covariance_scaling():
    cov = np.array([[2.0, 0.4, 0.0], [0.4, 1.5, 0.2], [0.0, 0.2, 3.0]])
    g = mx.Gaussian(mean=np.zeros(3), covariance=cov)
    base = mx.shannon_entropy(g)
    for alpha in (4.0, 2.7, 0.03):
        ga = mx.Gaussian(mean=np.zeros(3), covariance=alpha * cov)
        assert mx.shannon_entropy(ga) - base == pytest.approx(
            1.5 * math.log2(alpha), abs=1e-12
        )


def test_profile_fields_consistent():
    comp = mx.FactorizedLaplacian(location=[1.0, 2.0], scale=[0.5, 1.5])
    prof = mx.component_profile(comp)
    assert prof.shannon_bits == mx.shannon_entropy(comp)
    assert prof.collision_bits == mx.collision_entropy(comp)
    assert prof.offset_bits == mx.offset(comp)
    assert prof.collision_bits <= prof.shannon_bits


@pytest.mark.parametrize("kind", ["G", "L", "U"])
def test_shannon_matches_quadrature(kind):
    rng = rng_for(104)
    for _ in range(5):
        comp = random_component(kind, rng, 1)
        oracle = entropy_1d(comp, tol=1e-10)
        assert abs(mx.shannon_entropy(comp) - oracle.value) <= 1e-9
