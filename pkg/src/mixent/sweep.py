"""Mean-separation sweep protocol: variance-matched families, fixed random
unit directions, and per-separation entropy reports plus MC estimates.

Component means sit at S * u_c for K unit directions u_c drawn once per
sweep; all families share per-dimension variance 1 (Gaussian sigma = 1,
Laplace b = 1/sqrt(2), box half-width sqrt(3)), so only overlap geometry
changes along the sweep.  Hybrids split the labels half/half in family
order.  Results serialize to a fixed-header CSV.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import SpecFormatError
from .model import FactorizedLaplacian, Gaussian, MixtureModel, UniformBox
from .montecarlo import McEstimate, estimate
from .report import EntropyReport, approximate
from .rng import derive_seed, stream

FAMILIES = ("GM", "LM", "UM", "GLM", "GUM", "LUM", "GM_AR1")
_HYBRIDS = ("GLM", "GUM", "LUM")

#: Variance matching to sigma^2 = 1: 2b^2 = 1 and a^2/3 = 1.
LAPLACE_SCALE = 1.0 / math.sqrt(2.0)
BOX_HALF_WIDTH = math.sqrt(3.0)

CSV_HEADER = "family,n,K,rho,S,h_mc,se,lower,upper,jensen,approx,clipped"

# Sub-stream tags under the sweep seed.
_DIRECTIONS_STREAM = 0
_MC_STREAM = 1


def default_grid(dimension: int, points: int = 25) -> tuple[float, ...]:
    """Uniform separation grid from 0 to 12 (6 for n > 8)."""
    s_max = 12.0 if dimension <= 8 else 6.0
    return tuple(np.linspace(0.0, s_max, points))


@dataclass(frozen=True)
class SweepSpec:
    family: str
    dimension: int
    components: int
    separation_grid: tuple = ()
    rho: float = 0.0
    mc_samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        grid = tuple(float(s) for s in self.separation_grid)
        if not grid:
            grid = default_grid(self.dimension)
        object.__setattr__(self, "separation_grid", grid)

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise SpecFormatError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.dimension < 1:
            raise SpecFormatError("dimension must be a positive integer")
        if self.components < 1:
            raise SpecFormatError("components must be a positive integer")
        if self.family in _HYBRIDS and self.components % 2:
            raise SpecFormatError(f"{self.family} needs an even K for the half/half split")
        grid = np.asarray(self.separation_grid)
        if (grid < 0).any() or (np.diff(grid) <= 0).any():
            raise SpecFormatError("separation_grid must be nonnegative and strictly increasing")
        if not -1.0 < self.rho < 1.0:
            raise SpecFormatError("rho must lie in (-1, 1)")
        if self.mc_samples < 2:
            raise SpecFormatError("mc_samples must be at least 2")


@dataclass(frozen=True)
class SweepRow:
    separation: float
    h_mc_bits: float
    se_bits: float
    lower_bits: float
    upper_bits: float
    jensen_bits: float
    approx_bits: float
    clipped_bits: float


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple = field(default_factory=tuple)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        s = self.spec
        for r in self.rows:
            lines.append(
                f"{s.family},{s.dimension},{s.components},{s.rho:.12g},"
                f"{r.separation:.12g},{r.h_mc_bits:.12g},{r.se_bits:.12g},"
                f"{r.lower_bits:.12g},{r.upper_bits:.12g},{r.jensen_bits:.12g},"
                f"{r.approx_bits:.12g},{r.clipped_bits:.12g}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def ar1_covariance(dimension: int, rho: float) -> np.ndarray:
    """Unit-variance first-order autoregressive covariance, entries rho^|i-j|."""
    idx = np.arange(dimension)
    return rho ** np.abs(np.subtract.outer(idx, idx)).astype(float)


def unit_directions(spec: SweepSpec) -> np.ndarray:
    """K unit direction vectors, drawn once per sweep from the sweep seed."""
    rng = stream(spec.seed, _DIRECTIONS_STREAM)
    vecs = rng.standard_normal((spec.components, spec.dimension))
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    return vecs / norms


def _component(kind: str, mean: np.ndarray, cov: np.ndarray):
    if kind == "G":
        return Gaussian(mean=mean, covariance=cov)
    if kind == "L":
        return FactorizedLaplacian(location=mean, scale=np.full(mean.size, LAPLACE_SCALE))
    return UniformBox(center=mean, half_width=np.full(mean.size, BOX_HALF_WIDTH))


_FAMILY_KINDS = {
    "GM": ("G",),
    "GM_AR1": ("G",),
    "LM": ("L",),
    "UM": ("U",),
    "GLM": ("G", "L"),
    "GUM": ("G", "U"),
    "LUM": ("L", "U"),
}


def build_mixture(spec: SweepSpec, separation: float) -> MixtureModel:
    """Equal-weight variance-matched mixture at one separation value."""
    if separation < 0:
        raise ValueError("separation must be nonnegative")
    k, n = spec.components, spec.dimension
    means = separation * unit_directions(spec)
    cov = ar1_covariance(n, spec.rho) if spec.family == "GM_AR1" else np.eye(n)
    kinds = _FAMILY_KINDS[spec.family]
    components = []
    for c in range(k):
        kind = kinds[0] if len(kinds) == 1 or c < k // 2 else kinds[1]
        components.append(_component(kind, means[c], cov))
    return MixtureModel(weights=np.full(k, 1.0 / k), components=tuple(components), dimension=n)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """One entropy report and MC estimate per grid point, fully deterministic.

    The MC seed for grid point i derives from (sweep seed, i), so points may
    run in any order or in parallel without changing the output.
    """
    spec.validate()
    rows = []
    for i, s in enumerate(spec.separation_grid):
        model = build_mixture(spec, s)
        report: EntropyReport = approximate(model)
        mc: McEstimate = estimate(model, spec.mc_samples, derive_seed(spec.seed, _MC_STREAM, i))
        rows.append(
            SweepRow(
                separation=s,
                h_mc_bits=mc.entropy_bits,
                se_bits=mc.std_error_bits,
                lower_bits=report.lower_bits,
                upper_bits=report.upper_bits,
                jensen_bits=report.jensen_bits,
                approx_bits=report.approx_bits,
                clipped_bits=report.clipped_bits,
            )
        )
    return SweepResult(spec=spec, rows=tuple(rows))


def sweep_spec_from_dict(config: dict) -> SweepSpec:
    """Build a SweepSpec from the JSON sweep-config schema."""
    known = {"family", "dimension", "components", "separation_grid", "rho", "mc_samples", "seed"}
    unknown = set(config) - known
    if unknown:
        raise SpecFormatError(f"unknown sweep config fields: {sorted(unknown)}")
    for key in ("family", "dimension", "components"):
        if key not in config:
            raise SpecFormatError(f"sweep config is missing field '{key}'")
    spec = SweepSpec(
        family=config["family"],
        dimension=int(config["dimension"]),
        components=int(config["components"]),
        separation_grid=tuple(config.get("separation_grid", ())),
        rho=float(config.get("rho", 0.0)),
        mc_samples=int(config.get("mc_samples", 100_000)),
        seed=int(config.get("seed", 0)),
    )
    spec.validate()
    return spec


def load_sweep_spec(path) -> SweepSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"sweep config is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise SpecFormatError("sweep config must be a JSON object")
    return sweep_spec_from_dict(config)
