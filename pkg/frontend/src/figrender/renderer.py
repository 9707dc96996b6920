"""Render separation-sweep CSVs into paper-style multi-panel figures.

Each panel shows, against the mean separation S: the Monte Carlo entropy
estimate with a +-3*SE band, the two sandwich bound lines, and the clipped
closed-form approximation.  All plotted values come verbatim from the CSV;
the only arithmetic performed here is the +-3*SE band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

EXPECTED_HEADER = "family,n,K,rho,S,h_mc,se,lower,upper,jensen,approx,clipped"
EXPECTED_COLUMNS = EXPECTED_HEADER.split(",")
_NUMERIC_COLUMNS = EXPECTED_COLUMNS[3:]


class SweepCsvError(ValueError):
    """Sweep CSV does not match the documented header/row layout."""


@dataclass(frozen=True)
class SweepTable:
    family: str
    columns: dict

    @property
    def separations(self) -> list:
        return self.columns["S"]


@dataclass(frozen=True)
class FigureSpec:
    inputs: tuple
    titles: tuple = ()
    out_path: str = "figure.png"
    image_format: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(str(p) for p in self.inputs))
        object.__setattr__(self, "titles", tuple(self.titles))
        if not self.inputs:
            raise SweepCsvError("at least one input CSV is required")
        if self.titles and len(self.titles) != len(self.inputs):
            raise SweepCsvError(
                f"{len(self.titles)} titles given for {len(self.inputs)} inputs"
            )

    def panel_titles(self) -> tuple:
        if self.titles:
            return self.titles
        return tuple(Path(p).stem for p in self.inputs)


def load_sweep_csv(path) -> SweepTable:
    """Parse one sweep CSV, enforcing the exact documented header."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise SweepCsvError(f"{path}: file is empty")
    header = lines[0].strip()
    if header != EXPECTED_HEADER:
        got = header.split(",")
        missing = [c for c in EXPECTED_COLUMNS if c not in got]
        if missing:
            raise SweepCsvError(f"{path}: missing column '{missing[0]}'")
        raise SweepCsvError(
            f"{path}: header {header!r} does not match {EXPECTED_HEADER!r}"
        )
    if len(lines) < 2:
        raise SweepCsvError(f"{path}: no data rows")
    columns = {name: [] for name in _NUMERIC_COLUMNS}
    family = None
    for index, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != len(EXPECTED_COLUMNS):
            raise SweepCsvError(
                f"{path}: row {index} has {len(fields)} fields, expected "
                f"{len(EXPECTED_COLUMNS)}"
            )
        family = fields[0] if family is None else family
        for name, raw in zip(EXPECTED_COLUMNS[3:], fields[3:]):
            try:
                value = float(raw)
            except ValueError as exc:
                raise SweepCsvError(
                    f"{path}: row {index} column '{name}' is not numeric: {raw!r}"
                ) from exc
            columns[name].append(value)
    return SweepTable(family=family, columns=columns)


def _draw_panel(ax, table: SweepTable, title: str) -> None:
    cols = table.columns
    s = cols["S"]
    band_lo = [h - 3.0 * e for h, e in zip(cols["h_mc"], cols["se"])]
    band_hi = [h + 3.0 * e for h, e in zip(cols["h_mc"], cols["se"])]
    ax.fill_between(s, band_lo, band_hi, color="tab:blue", alpha=0.2, linewidth=0)
    ax.plot(s, cols["h_mc"], color="tab:blue", label="MC estimate")
    ax.plot(s, cols["lower"], color="tab:gray", linestyle="--", label="lower bound")
    ax.plot(s, cols["upper"], color="tab:gray", linestyle=":", label="upper bound")
    ax.plot(s, cols["clipped"], color="tab:red", linestyle="-.", label="clipped estimate")
    ax.set_title(title)
    ax.set_xlabel("separation S")
    ax.set_ylabel("entropy (bits)")


def render(spec: FigureSpec):
    """Write the multi-panel figure and return the matplotlib Figure."""
    tables = [load_sweep_csv(path) for path in spec.inputs]
    count = len(tables)
    ncols = min(3, count)
    nrows = math.ceil(count / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 3.2 * nrows), squeeze=False
    )
    flat = [ax for row in axes for ax in row]
    for ax, table, title in zip(flat, tables, spec.panel_titles()):
        _draw_panel(ax, table, title)
    for ax in flat[count:]:
        ax.set_visible(False)
    flat[0].legend(loc="lower right", fontsize="small")
    fig.tight_layout()
    fig.savefig(spec.out_path, format=spec.image_format)
    return fig
