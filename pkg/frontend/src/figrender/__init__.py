"""Multi-panel figure rendering for mixture-entropy separation sweeps."""

from .renderer import (
    EXPECTED_HEADER,
    FigureSpec,
    SweepCsvError,
    SweepTable,
    load_sweep_csv,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "EXPECTED_HEADER",
    "FigureSpec",
    "SweepCsvError",
    "SweepTable",
    "load_sweep_csv",
    "render",
]
