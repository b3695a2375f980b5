"""Representation of univariate probability laws and exact total-variation
arithmetic.

A law is a convex mixture of a discrete part (weighted atoms) and an
absolutely continuous part (nonnegative samples on a uniform grid).
Density samples are read as the piecewise-linear interpolant vanishing
at both grid ends, which makes masses, convolution supports, L1
distances and characteristic functions of represented laws computable
without quadrature guesswork: integrals of piecewise-linear data are
evaluated exactly, cell by cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import config
from .errors import InputError, LawShapeError, NotLatticeError

_FLOAT_EPS = float(np.finfo(float).eps)


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class Atom:
    """Point mass: location and mass in (0, 1]."""

    location: float
    mass: float

    def __post_init__(self):
        if not (self.mass > 0.0):
            raise InputError(f"atom mass must be positive, got {self.mass}")
        if self.mass > 1.0 + config.DISCRETE_MASS_TOL:
            raise InputError(f"atom mass must be <= 1, got {self.mass}")


@dataclass(frozen=True)
class DiscreteLaw:
    """Finitely many atoms, sorted strictly by location, total mass 1."""

    atoms: tuple[Atom, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise InputError("discrete law needs at least one atom")
        locs = [a.location for a in atoms]
        if any(b - a <= config.ATOM_MERGE_TOL for a, b in zip(locs, locs[1:])):
            raise InputError("atom locations must be sorted and separated")
        total = math.fsum(a.mass for a in atoms)
        if abs(total - 1.0) > config.DISCRETE_MASS_TOL * max(1, len(atoms)):
            raise InputError(f"atom masses must sum to 1, got {total!r}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def locations(self) -> np.ndarray:
        return np.array([a.location for a in self.atoms])

    @property
    def masses(self) -> np.ndarray:
        return np.array([a.mass for a in self.atoms])

    def lattice_params(self, rel_tol: float = config.LATTICE_REL_TOL) -> tuple[float, float]:
        """Fit the support into a lattice a + b*Z and return (a, b).

        b is the approximate positive gcd of the location differences,
        refined by least squares. A degenerate law returns b = 0.
        Raises NotLatticeError when no span reproduces all locations at
        the given relative tolerance.
        """
        locs = self.locations
        if len(locs) == 1:
            return float(locs[0]), 0.0
        diffs = locs[1:] - locs[0]
        scale = float(diffs[-1])
        tol = rel_tol * scale
        g = 0.0
        for d in diffs:
            a, b = max(abs(d), g), min(abs(d), g)
            while b > tol:
                a, b = b, abs(a - b * round(a / b))
            g = a
        if g <= 0 or g < (diffs[0] * 1e-6):
            raise NotLatticeError("no lattice span fits the support")
        ks = np.round(diffs / g)
        if np.any(np.abs(diffs - ks * g) > tol):
            raise NotLatticeError("support is not lattice at tolerance")
        # least-squares refinement of the span through the fitted indices
        b_fit = float(np.dot(ks, diffs) / np.dot(ks, ks))
        return float(locs[0]), b_fit


@dataclass(frozen=True, eq=False)
class DensityLaw:
    """Uniform-grid samples of a probability density.

    The density is the piecewise-linear interpolant of ``samples`` at
    nodes ``grid_origin + i*grid_step``; it must vanish at both grid
    ends and integrate to 1 under the trapezoid rule (exact for the
    interpolant).
    """

    grid_origin: float
    grid_step: float
    samples: np.ndarray
    quadrature_rule: str = "trapezoid"

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if self.quadrature_rule != "trapezoid":
            raise InputError(f"unsupported quadrature rule {self.quadrature_rule!r}")
        if not (self.grid_step > 0):
            raise InputError("grid_step must be positive")
        if samples.ndim != 1 or samples.size < 3:
            raise InputError("samples must be a 1-D array with >= 3 entries")
        if np.any(samples < -1e-13):
            raise InputError("density samples must be nonnegative")
        samples = np.maximum(samples, 0.0)
        if samples[0] != 0.0 or samples[-1] != 0.0:
            raise InputError("density must vanish at both grid ends")
        mass = self.grid_step * float(np.sum(samples))
        if abs(mass - 1.0) > config.DENSITY_MASS_TOL:
            raise InputError(f"density must integrate to 1, got {mass!r}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid_origin + self.grid_step * np.arange(self.samples.size)

    def pdf(self, x: np.ndarray) -> np.ndarray:
        """Piecewise-linear density values, zero outside the grid."""
        return np.interp(np.asarray(x, dtype=float), self.nodes, self.samples,
                         left=0.0, right=0.0)


@dataclass(frozen=True)
class Law:
    """Mixture  discrete_weight * discrete + (1 - discrete_weight) * continuous."""

    discrete_weight: float
    discrete: DiscreteLaw | None = None
    continuous: DensityLaw | None = None

    def __post_init__(self):
        w = self.discrete_weight
        if not (0.0 <= w <= 1.0):
            raise InputError(f"discrete_weight must be in [0, 1], got {w}")
        if w == 0.0 and self.discrete is not None:
            raise InputError("discrete part present with zero weight")
        if w == 1.0 and self.continuous is not None:
            raise InputError("continuous part present with unit discrete weight")
        if w > 0.0 and self.discrete is None:
            raise InputError("positive discrete weight without discrete part")
        if w < 1.0 and self.continuous is None:
            raise InputError("discrete weight below 1 without continuous part")

    @property
    def is_pure_discrete(self) -> bool:
        return self.discrete_weight == 1.0

    @property
    def is_pure_density(self) -> bool:
        return self.discrete_weight == 0.0


@dataclass(frozen=True)
class SupportInfo:
    """Numeric support bounds at node resolution; cext only when bounded."""

    lext: float
    rext: float
    cext: float | None

    def __post_init__(self):
        if self.lext > self.rext:
            raise InputError("lext must not exceed rext")


# ---------------------------------------------------------------------------
# Constructors


def law_from_atoms(pairs: Iterable[tuple[float, float]], normalize: bool = False) -> Law:
    """Pure discrete law from (location, mass) pairs; coincident locations merge."""
    merged = _merge_atom_pairs(pairs)
    total = math.fsum(m for _, m in merged)
    if normalize:
        merged = [(x, m / total) for x, m in merged]
    return Law(1.0, DiscreteLaw(tuple(Atom(x, m) for x, m in merged)), None)


def point_mass(x: float) -> Law:
    return law_from_atoms([(x, 1.0)])


def law_from_density(origin: float, step: float, samples: Sequence[float]) -> Law:
    return Law(0.0, None, DensityLaw(origin, step, np.asarray(samples, dtype=float)))


def density_from_callable(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                          cells: int | None = None, step: float | None = None) -> Law:
    """Sample a density on [lo, hi], pad a zero node on each side and
    renormalize to unit trapezoid mass."""
    if hi <= lo:
        raise InputError("need hi > lo")
    if step is None:
        n = cells if cells is not None else config.DEFAULT_CELLS
        step = (hi - lo) / n
    else:
        n = int(math.ceil((hi - lo) / step - 1e-12))
    xs = lo + step * np.arange(n + 1)
    vals = np.asarray(fn(xs), dtype=float)
    vals = np.where(xs <= hi + 1e-12 * step, vals, 0.0)
    vals = np.maximum(vals, 0.0)
    samples = np.concatenate(([0.0], vals, [0.0]))
    mass = step * float(np.sum(samples))
    if mass <= 0:
        raise InputError("sampled density has zero mass")
    return law_from_density(lo - step, step, samples / mass)


def uniform_density(lo: float, hi: float, cells: int | None = None) -> Law:
    """Uniform law on [lo, hi] in grid representation."""
    return density_from_callable(lambda x: np.ones_like(x), lo, hi, cells=cells)


def continuous_bernoulli(q: float, tau: float, side: str,
                         step: float | None = None) -> Law:
    """Continuous Bernoulli smoothing kernel, rescaled to [0, tau]
    ("plus") or [-tau, 0] ("minus").

    The base density on [0, 1] is C_q * q^x * (1-q)^(1-x) with
    C_q = log(q/(1-q)) / (2q - 1); q = 1/2 is rejected because C_q
    degenerates there (and the uniform kernel is excluded anyway).
    """
    if abs(q - 0.5) < config.Q_HALF_EXCLUSION or not (0.0 < q < 1.0):
        raise InputError(f"q must be in (0,1) away from 1/2, got {q}")
    if not (tau > 0):
        raise InputError("tau must be positive")
    if side not in ("plus", "minus"):
        raise InputError(f"side must be 'plus' or 'minus', got {side!r}")
    log_ratio = math.log(q) - math.log1p(-q)
    c_q = log_ratio / (2.0 * q - 1.0)

    def base(y: np.ndarray) -> np.ndarray:
        # q^y (1-q)^(1-y) = (1-q) * exp(y * log(q/(1-q))), clipped to [0, 1]
        out = c_q * (1.0 - q) * np.exp(y * log_ratio)
        return np.where((y >= 0.0) & (y <= 1.0), out, 0.0)

    if side == "plus":
        lo, hi = 0.0, tau
        fn = lambda x: base(x / tau) / tau
    else:
        lo, hi = -tau, 0.0
        fn = lambda x: base(x / tau + 1.0) / tau
    return density_from_callable(fn, lo, hi, step=step)


# ---------------------------------------------------------------------------
# Support geometry


def support_info(F: Law, mass_tol: float = 0.0) -> SupportInfo:
    """Support bounds at node resolution.

    Atoms with weighted mass <= mass_tol and density nodes with weighted
    node mass <= mass_tol are ignored; the default 0 reports the literal
    support of the representation.
    """
    if mass_tol < 0:
        raise InputError("mass_tol must be nonnegative")
    lo, hi = math.inf, -math.inf
    w = F.discrete_weight
    if F.discrete is not None:
        keep = w * F.discrete.masses > mass_tol
        if np.any(keep):
            locs = F.discrete.locations[keep]
            lo, hi = min(lo, float(locs.min())), max(hi, float(locs.max()))
    if F.continuous is not None:
        d = F.continuous
        node_mass = (1.0 - w) * d.grid_step * d.samples
        idx = np.nonzero(node_mass > mass_tol)[0]
        if idx.size:
            nodes = d.nodes
            lo = min(lo, float(nodes[idx[0]]))
            hi = max(hi, float(nodes[idx[-1]]))
    if not math.isfinite(lo) or not math.isfinite(hi):
        raise LawShapeError("empty support at this mass tolerance")
    return SupportInfo(lo, hi, 0.5 * (lo + hi))


def is_shift_symmetric(F: Law, tol: float = config.SHIFT_SYMMETRY_TOL) -> bool:
    """True when F reflected about its support center equals F within tol."""
    info = support_info(F)
    if info.cext is None or not math.isfinite(info.lext) or not math.isfinite(info.rext):
        raise LawShapeError("shift symmetry needs bounded support")
    c = info.cext
    width = max(info.rext - info.lext, 1.0)
    if F.discrete is not None:
        locs, masses = F.discrete.locations, F.discrete.masses
        loc_tol = max(config.ATOM_MERGE_TOL, 1e-9 * width)
        for x, m in zip(locs, masses):
            j = np.searchsorted(locs, 2.0 * c - x)
            ok = False
            for k in (j - 1, j):
                if 0 <= k < len(locs) and abs(locs[k] - (2.0 * c - x)) <= loc_tol:
                    ok = abs(masses[k] - m) <= tol * max(1.0, m)
            if not ok:
                return False
    if F.continuous is not None:
        d = F.continuous
        xs = np.union1d(d.nodes, 2.0 * c - d.nodes)
        diff = d.pdf(xs) - d.pdf(2.0 * c - xs)
        top = float(np.max(d.samples))
        if float(np.max(np.abs(diff))) > tol * max(top, 1.0):
            return False
    return True


# ---------------------------------------------------------------------------
# Mixture / transform / convolution


def _merge_atom_pairs(pairs: Iterable[tuple[float, float]]) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for x, m in sorted((float(x), float(m)) for x, m in pairs):
        if m <= 0.0:
            continue
        if out and x - out[-1][0] <= config.ATOM_MERGE_TOL:
            out[-1] = (out[-1][0], out[-1][1] + m)
        else:
            out.append((x, m))
    return out


def _weighted_density_sum(parts: list[tuple[float, DensityLaw]]) -> DensityLaw:
    """Combine weighted densities onto one uniform grid (weights sum to 1)."""
    if len(parts) == 1 and abs(parts[0][0] - 1.0) < 1e-14:
        return parts[0][1]
    step = min(d.grid_step for _, d in parts)
    lo = min(d.grid_origin for _, d in parts)
    hi = max(d.nodes[-1] for _, d in parts)
    n = int(math.ceil((hi - lo) / step + 0.5)) + 1
    xs = lo + step * np.arange(n + 1)
    acc = np.zeros(n + 1)
    for w, d in parts:
        acc += w * d.pdf(xs)
    acc[0] = 0.0
    acc[-1] = 0.0
    mass = step * float(np.sum(acc))
    return DensityLaw(lo, step, acc / mass)


def mix(c: float, F1: Law, F2: Law) -> Law:
    """Pointwise convex combination c*F1 + (1-c)*F2; coincident atoms merge."""
    if not (0.0 <= c <= 1.0):
        raise InputError(f"mixing weight must be in [0, 1], got {c}")
    if c == 1.0:
        return F1
    if c == 0.0:
        return F2
    atom_pairs: list[tuple[float, float]] = []
    for w, law in ((c, F1), (1.0 - c, F2)):
        if law.discrete is not None:
            wd = w * law.discrete_weight
            atom_pairs.extend((a.location, wd * a.mass) for a in law.discrete.atoms)
    merged = _merge_atom_pairs(atom_pairs)
    w_disc = math.fsum(m for _, m in merged)
    disc = None
    if merged:
        disc = DiscreteLaw(tuple(Atom(x, m / w_disc) for x, m in merged))
    dens_parts: list[tuple[float, DensityLaw]] = []
    for w, law in ((c, F1), (1.0 - c, F2)):
        if law.continuous is not None:
            wc = w * (1.0 - law.discrete_weight)
            if wc > 0:
                dens_parts.append((wc, law.continuous))
    if not dens_parts:
        return Law(1.0, disc, None)
    w_cont = math.fsum(w for w, _ in dens_parts)
    cont = _weighted_density_sum([(w / w_cont, d) for w, d in dens_parts])
    if disc is None:
        return Law(0.0, None, cont)
    return Law(w_disc / (w_disc + w_cont), disc, cont)


def shift_scale(F: Law, shift: float, scale: float) -> Law:
    """Law of scale*X + shift for X ~ F."""
    if not (scale > 0):
        raise InputError(f"scale must be positive, got {scale}")
    disc = None
    if F.discrete is not None:
        disc = DiscreteLaw(tuple(Atom(scale * a.location + shift, a.mass)
                                 for a in F.discrete.atoms))
    cont = None
    if F.continuous is not None:
        d = F.continuous
        cont = DensityLaw(scale * d.grid_origin + shift, scale * d.grid_step,
                          d.samples / scale)
    return Law(F.discrete_weight, disc, cont)


def _resample_density(d: DensityLaw, step: float) -> DensityLaw:
    """Resample onto a finer/other uniform step, keeping the origin."""
    if abs(step - d.grid_step) <= 1e-12 * d.grid_step:
        return d
    width = d.nodes[-1] - d.grid_origin
    n = int(math.ceil(width / step - 1e-12))
    xs = d.grid_origin + step * np.arange(n + 2)
    vals = d.pdf(xs)
    vals[0] = 0.0
    vals[-1] = 0.0
    mass = step * float(np.sum(vals))
    return DensityLaw(d.grid_origin, step, vals / mass)


def _convolve_densities(d1: DensityLaw, d2: DensityLaw) -> DensityLaw:
    step = min(d1.grid_step, d2.grid_step)
    if (d1.nodes[-1] - d1.grid_origin + d2.nodes[-1] - d2.grid_origin) / step > (1 << 24):
        raise InputError("resolution underflow: convolution grid would exceed "
                         "2^24 cells; resample the operands first")
    d1, d2 = _resample_density(d1, step), _resample_density(d2, step)
    s1, s2 = d1.samples, d2.samples
    if s1.size * s2.size > 262144:
        from scipy.signal import fftconvolve
        conv = fftconvolve(s1, s2)
    else:
        conv = np.convolve(s1, s2)
    conv = np.maximum(conv * step, 0.0)
    conv[0] = 0.0
    conv[-1] = 0.0
    mass = step * float(np.sum(conv))
    return DensityLaw(d1.grid_origin + d2.grid_origin, step, conv / mass)


def _convolve_atoms_density(disc: DiscreteLaw, d: DensityLaw) -> DensityLaw:
    """Sum of atom-shifted density copies on one grid.

    Off-grid shifts split each copy linearly between the two adjacent
    node offsets; mass is preserved exactly and the support widens by
    at most one grid step.
    """
    h = d.grid_step
    locs, masses = disc.locations, disc.masses
    rel = locs / h
    base = np.floor(rel + 1e-9).astype(int)
    frac = rel - base
    frac[frac < 1e-9] = 0.0
    bmin = int(base.min())
    span = int(base.max()) - bmin + 1
    n = d.samples.size
    acc = np.zeros(n + span + 1)
    for b, f, m in zip(base, frac, masses):
        off = b - bmin
        acc[off:off + n] += m * (1.0 - f) * d.samples
        if f > 0.0:
            acc[off + 1:off + 1 + n] += m * f * d.samples
    origin = d.grid_origin + h * bmin
    acc[0] = 0.0
    acc[-1] = 0.0
    mass = h * float(np.sum(acc))
    return DensityLaw(origin, h, acc / mass)


def convolve(F1: Law, F2: Law) -> Law:
    """Convolution of two laws.

    Discrete (*) discrete is exact; parts involving densities land on a
    common uniform grid. Support bounds add within one grid step.
    """
    pieces_atoms: list[tuple[float, float]] = []
    pieces_dens: list[tuple[float, DensityLaw]] = []
    w1, w2 = F1.discrete_weight, F2.discrete_weight

    if F1.discrete is not None and F2.discrete is not None and w1 * w2 > 0:
        for a in F1.discrete.atoms:
            for b in F2.discrete.atoms:
                pieces_atoms.append((a.location + b.location, w1 * w2 * a.mass * b.mass))
    if F1.discrete is not None and F2.continuous is not None:
        w = w1 * (1.0 - w2)
        if w > 0:
            pieces_dens.append((w, _convolve_atoms_density(F1.discrete, F2.continuous)))
    if F2.discrete is not None and F1.continuous is not None:
        w = w2 * (1.0 - w1)
        if w > 0:
            pieces_dens.append((w, _convolve_atoms_density(F2.discrete, F1.continuous)))
    if F1.continuous is not None and F2.continuous is not None:
        w = (1.0 - w1) * (1.0 - w2)
        if w > 0:
            pieces_dens.append((w, _convolve_densities(F1.continuous, F2.continuous)))

    merged = _merge_atom_pairs(pieces_atoms)
    w_disc = math.fsum(m for _, m in merged)
    disc = DiscreteLaw(tuple(Atom(x, m / w_disc) for x, m in merged)) if merged else None
    if not pieces_dens:
        return Law(1.0, disc, None)
    w_cont = math.fsum(w for w, _ in pieces_dens)
    cont = _weighted_density_sum([(w / w_cont, d) for w, d in pieces_dens])
    if disc is None:
        return Law(0.0, None, cont)
    return Law(w_disc / (w_disc + w_cont), disc, cont)


# ---------------------------------------------------------------------------
# Total variation and the L1 shift modulus


def _union_nodes(*node_arrays: np.ndarray) -> np.ndarray:
    xs = np.sort(np.concatenate(node_arrays))
    if xs.size == 0:
        return xs
    keep = np.empty(xs.size, dtype=bool)
    keep[0] = True
    span = max(xs[-1] - xs[0], 1.0)
    np.greater(np.diff(xs), 1e-15 * span, out=keep[1:])
    return xs[keep]


def _abs_pl_integral(xs: np.ndarray, vals: np.ndarray) -> float:
    """Exact integral of |piecewise-linear function| through (xs, vals)."""
    a, b = vals[:-1], vals[1:]
    dx = np.diff(xs)
    straight = 0.5 * dx * (np.abs(a) + np.abs(b))
    crossing = a * b < 0
    if np.any(crossing):
        ac, bc = a[crossing], b[crossing]
        straight[crossing] = 0.5 * dx[crossing] * (ac * ac + bc * bc) / (np.abs(ac) + np.abs(bc))
    return float(np.sum(straight))


def _density_l1(parts1: list[tuple[float, DensityLaw]],
                parts2: list[tuple[float, DensityLaw]]) -> tuple[float, float]:
    """Exact L1 distance between two weighted density sums, plus a float
    rounding allowance."""
    all_nodes = [d.nodes for _, d in parts1 + parts2]
    if not all_nodes:
        return 0.0, 0.0
    xs = _union_nodes(*all_nodes)
    diff = np.zeros_like(xs)
    for w, d in parts1:
        diff += w * d.pdf(xs)
    for w, d in parts2:
        diff -= w * d.pdf(xs)
    value = _abs_pl_integral(xs, diff)
    bound = 8.0 * _FLOAT_EPS * xs.size if xs.size else 0.0
    return value, bound


def tv_distance(F1: Law, F2: Law) -> tuple[float, float]:
    """Total variation of F1 - F2 as a function on R: sum of absolute
    atom-mass differences plus the L1 distance of the density parts.

    Returns (value, error_bound). Discrete vs discrete is exact
    (error_bound 0); density parts are integrated exactly for the
    piecewise-linear representation, so the bound only covers float
    accumulation.
    """
    pairs: list[tuple[float, float]] = []
    for sign, law in ((1.0, F1), (-1.0, F2)):
        if law.discrete is not None and law.discrete_weight > 0:
            w = sign * law.discrete_weight
            pairs.extend((a.location, w * a.mass) for a in law.discrete.atoms)
    merged: list[tuple[float, float]] = []
    for x, m in sorted(pairs):
        if merged and x - merged[-1][0] <= config.ATOM_MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((x, m))
    atom_part = math.fsum(abs(m) for _, m in merged)

    parts1 = [(1.0 - F1.discrete_weight, F1.continuous)] if F1.continuous is not None else []
    parts2 = [(1.0 - F2.discrete_weight, F2.continuous)] if F2.continuous is not None else []
    dens_part, bound = _density_l1(parts1, parts2)
    return atom_part + dens_part, bound


def l1_modulus(F: Law, u: float) -> float:
    """L1 modulus of continuity of the density part:
    integral of |p(x) - p(x - u)| dx, exact for the representation."""
    if F.continuous is None:
        raise LawShapeError("l1_modulus needs a density part")
    d = F.continuous
    xs = _union_nodes(d.nodes, d.nodes + u)
    diff = d.pdf(xs) - d.pdf(xs - u)
    return _abs_pl_integral(xs, diff)


def mass_on_interval(d: DensityLaw, lo: float, hi: float) -> float:
    """Exact mass the piecewise-linear density puts on [lo, hi]."""
    if hi <= lo:
        return 0.0
    xs = _union_nodes(d.nodes, np.array([lo, hi]))
    xs = xs[(xs >= lo - 1e-15) & (xs <= hi + 1e-15)]
    if xs.size < 2:
        return 0.0
    vals = d.pdf(xs)
    return float(np.sum(0.5 * np.diff(xs) * (vals[:-1] + vals[1:])))


def restrict_density(F: Law, lo: float, hi: float) -> tuple[Law, float]:
    """Restrict a pure density law to [lo, hi] and renormalize.

    Returns (restricted law, kept mass). Nodes outside [lo, hi] are
    zeroed; the returned kept mass is the exact mass of the original
    interpolant on [lo, hi].
    """
    if not F.is_pure_density:
        raise LawShapeError("restrict_density needs a pure density law")
    d = F.continuous
    kept = mass_on_interval(d, lo, hi)
    if kept <= 0:
        raise InputError("restriction interval carries no mass")
    nodes = d.nodes
    inside = (nodes >= lo - 1e-15) & (nodes <= hi + 1e-15)
    vals = np.where(inside, d.samples, 0.0)
    idx = np.nonzero(vals > 0)[0]
    if idx.size == 0:
        raise InputError("restriction keeps no positive node")
    i0, i1 = max(idx[0] - 1, 0), min(idx[-1] + 1, vals.size - 1)
    vals = vals[i0:i1 + 1].copy()
    vals[0] = 0.0
    vals[-1] = 0.0
    mass = d.grid_step * float(np.sum(vals))
    out = DensityLaw(d.grid_origin + i0 * d.grid_step, d.grid_step, vals / mass)
    return Law(0.0, None, out), kept
