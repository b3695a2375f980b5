"""Numeric defaults and the run configuration consumed by the CLI.

Library functions take explicit keyword overrides; these constants are
the single place where the default resolutions and tolerances live.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

# Density grids: number of cells per unit of support width.
DEFAULT_CELLS = 1024

# Atoms closer than this merge into one (convolution of lattice laws
# produces exact collisions up to float rounding).
ATOM_MERGE_TOL = 1e-12

# Mass-sum tolerances for law validation.
DISCRETE_MASS_TOL = 1e-12
DENSITY_MASS_TOL = 1e-8

# Continuous Bernoulli: |q - 1/2| below this is rejected (the
# normalizing constant degenerates to 0/0 at q = 1/2).
Q_HALF_EXCLUSION = 1e-3

# Shift-symmetry detection tolerance (relative, on masses/samples).
SHIFT_SYMMETRY_TOL = 1e-9

# Lattice detection: relative tolerance on span fitting.
LATTICE_REL_TOL = 1e-9

# Distinguished logarithm: modulus floor and step-halving budget.
LOG_MODULUS_FLOOR = 1e-6
MAX_BRANCH_HALVINGS = 16

# Local refinement of scan minima/roots.
REFINE_XTOL = 1e-12
REFINE_TOP = 5

# Decay-window scan: frequency cap and samples per CF oscillation.
DECAY_TMAX = 2048.0
SAMPLES_PER_OSCILLATION = 64
DECAY_SAMPLES_PER_OSCILLATION = 16

# Zero-free scans: default cells per window, total-point cap for wide
# windows, and the window inside which bad mixing weights are collected.
SCAN_CELLS = 2048
SCAN_POINTS_CAP = 1 << 17
BADSET_WINDOW = 64.0 * 3.141592653589793

# Delta selection: candidates tried and the minimal distance the chosen
# delta must keep from every bad delta.
DELTA_CANDIDATES = 8
DELTA_SEPARATION = 1e-6

# Certified-minimum floor under which a candidate delta is rejected.
CERTIFICATE_FLOOR = 1e-9

# CLI verdict threshold: scans refining below this count as "zero found".
ZERO_VERDICT_TOL = 1e-8


@dataclass
class RunConfig:
    """CLI-level configuration, loadable from the file named by the
    QIDLAB_CONFIG environment variable."""

    grid_cells: int = DEFAULT_CELLS
    scan_window: float = 64.0
    scan_step: float = 0.01
    refine_tol: float = REFINE_XTOL
    q_default: float = 0.4
    out_dir: str = "."

    def __post_init__(self):
        if self.grid_cells <= 0:
            raise ValueError("grid_cells must be positive")
        for name in ("scan_window", "scan_step", "refine_tol", "q_default"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path) as fh:
            data = json.load(fh)
        try:
            return cls(**data)
        except TypeError as exc:
            raise ValueError(f"bad run configuration {path}: {exc}") from exc
