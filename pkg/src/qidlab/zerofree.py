"""Selection of a mixing weight delta in (0, tau) such that
delta*e^{it*gamma0} + (1-delta)*f0(t) has no real zeros, with a scan
certificate.

Zeros can only occur where Im(f0(t)e^{-it*gamma0}) vanishes, and there
only at one specific delta per root; the selector enumerates those bad
weights on a window, picks the candidate farthest from all of them and
certifies the resulting mixture by a minimum-modulus scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .charfn import CharFn, ZeroFreeCertificate, decay_window, imag_zero_scan, min_modulus_scan
from .dist import Law, is_shift_symmetric, mix, point_mass, support_info
from .errors import InputError, SelectionUnverifiableError, WindowError


@dataclass(frozen=True)
class DeltaSelection:
    """Chosen mixing weight with the bad weights it avoids and the scan
    certificate of the mixed characteristic function."""

    delta: float
    bad_deltas: tuple[float, ...]
    certificate: ZeroFreeCertificate
    gamma0: float
    tau: float

    def __post_init__(self):
        if not (0.0 < self.delta < self.tau):
            raise InputError("delta must lie strictly inside (0, tau)")
        for d in self.bad_deltas:
            if abs(self.delta - d) < config.DELTA_SEPARATION:
                raise InputError("delta too close to a bad weight")
        if not (self.certificate.min_modulus > 0):
            raise InputError("certificate must have positive minimum")


def _scan_params(F0: Law, gamma0: float, delta_hint: float, fa: CharFn | None,
                 cap: float | None = None) -> tuple[float, float, float | None]:
    """Window and step for scans of delta*e^{it*gamma0} + (1-delta)*f0.

    Lattice part: one CF period 2*pi/span is exhaustive. Density part:
    a decay window beyond which the atom coefficient dominates the
    density contribution at the hinted delta (fa is the shared density
    CharFn carrying the cached decay profile). Returns (T, step,
    tail_bound), tail_bound being the dominated density contribution
    beyond T (None without a density part). The step coarsens so the
    total point count stays below the configured cap.
    """
    T_lattice = 0.0
    T_density = 0.0
    step = math.inf
    tail = None
    w = F0.discrete_weight
    if F0.discrete is not None and len(F0.discrete.atoms) >= 2:
        a, b = F0.discrete.lattice_params()
        period = 2.0 * math.pi / b
        locs = F0.discrete.locations
        degree = max(8, int(round((locs[-1] - locs[0]) / b)))
        T_lattice = period
        step = min(step, period / max(config.SCAN_CELLS, 32 * degree))
    if F0.continuous is not None:
        d = F0.continuous
        width = max(d.nodes[-1] - d.grid_origin, d.grid_step)
        step = min(step, (2.0 * math.pi / width) / config.SAMPLES_PER_OSCILLATION)
        coeff = (1.0 - delta_hint) * (1.0 - w)
        threshold = delta_hint / (2.0 * coeff) if coeff > 0 else 1.0
        if threshold < 0.95:
            try:
                T_density = decay_window(fa, threshold)
                tail = 0.5 * delta_hint
            except WindowError:
                # decay too slow for full dominance: scan the whole
                # configured range and record the honest sampled tail
                ts, tail_max, _ = fa.decay_profile()
                T_density = float(ts[-1])
                tail = coeff * float(tail_max[-1])
        else:
            T_density = 4.0 * math.pi / width
        if cap is not None:
            T_density = min(T_density, cap)
    T = max(T_lattice, T_density)
    if T == 0.0:
        T = 4.0 * math.pi
    if not math.isfinite(step):
        step = T / config.SCAN_CELLS
    step = max(step, T / config.SCAN_POINTS_CAP)
    return T, step, tail


def _root_scan_step(F0: Law, gamma0: float) -> float:
    """Step for sign-change scans of Im(f0 e^{-it gamma0}): eight
    samples per half-period of the fastest oscillation."""
    info = support_info(F0)
    extent = max(abs(info.lext - gamma0), abs(info.rext - gamma0), 1e-6)
    return math.pi / (8.0 * extent)


def _check_center_precondition(F0: Law, gamma0: float) -> None:
    info = support_info(F0)
    if is_shift_symmetric(F0) and abs(gamma0 - info.cext) <= config.SHIFT_SYMMETRY_TOL:
        raise InputError(
            "gamma0 equals the support center of a shift-symmetric law; "
            "the imaginary part of the recentered CF vanishes identically")


def bad_delta_set(f0: CharFn, gamma0: float, T: float, step: float) -> list[float]:
    """Mixing weights delta' at which the mixture CF can vanish.

    At every root t' of Im(f1) with f1(t) = f0(t)e^{-it*gamma0} and
    Re f1(t') < 0, the weight delta' = -Re f1(t') / (1 - Re f1(t'))
    (always in (0,1)) is the unique one killing the mixture at t'.
    Returns the deduplicated sorted list over roots found in [-T, T].
    """
    _check_center_precondition(f0.law, gamma0)
    roots = imag_zero_scan(f0, gamma0, T, step)
    bad: list[float] = []
    for t in roots:
        re = (f0(t) * np.exp(-1j * gamma0 * t)).real
        if re < -1e-15:
            bad.append(float(-re / (1.0 - re)))
    bad.sort()
    out: list[float] = []
    for d in bad:
        if not out or d - out[-1] > 1e-12:
            out.append(d)
    return out


def _candidate_ladder(bad: list[float], tau: float) -> list[float]:
    """Midpoints of the gaps of (0, tau) \\ bad, widest gap first; the
    widest gap also contributes its quarter points as fallbacks."""
    bounds = [0.0] + [d for d in bad if 0.0 < d < tau] + [tau]
    gaps = sorted(((hi - lo, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo),
                  reverse=True)
    cands = [lo + 0.5 * (hi - lo) for _, lo, hi in gaps]
    if gaps:
        width, lo, hi = gaps[0]
        cands.extend([lo + 0.25 * width, lo + 0.75 * width])
    return cands[:config.DELTA_CANDIDATES]


def select_delta(F0: Law, gamma0: float, tau: float) -> DeltaSelection:
    """Pick delta in (0, tau) keeping the mixture CF zero-free at scan
    resolution, maximizing the distance to the bad weights.

    Raises SelectionUnverifiableError when no candidate earns a
    positive certificate at the configured resolution.
    """
    if not (0.0 < tau <= 1.0):
        raise InputError(f"tau must be in (0, 1], got {tau}")
    _check_center_precondition(F0, gamma0)
    fa = CharFn(Law(0.0, None, F0.continuous)) if F0.continuous is not None else None
    T0, _, _ = _scan_params(F0, gamma0, delta_hint=0.5 * tau, fa=fa,
                            cap=config.BADSET_WINDOW)
    bad = bad_delta_set(CharFn(F0), gamma0, T0, _root_scan_step(F0, gamma0))
    last_min = 0.0
    for delta in _candidate_ladder(bad, tau):
        if any(abs(delta - d) < config.DELTA_SEPARATION for d in bad):
            continue
        mixture = mix(delta, point_mass(gamma0), F0)
        T, step, tail = _scan_params(F0, gamma0, delta_hint=delta, fa=fa)
        cert = min_modulus_scan(CharFn(mixture), T, step, refine=True)
        cert = ZeroFreeCertificate(cert.window_T, cert.grid_step,
                                   cert.min_modulus, cert.argmin_t, tail_bound=tail)
        last_min = max(last_min, cert.min_modulus)
        if cert.min_modulus > config.CERTIFICATE_FLOOR:
            return DeltaSelection(delta=delta, bad_deltas=tuple(bad),
                                  certificate=cert, gamma0=gamma0, tau=tau)
    raise SelectionUnverifiableError(
        f"no candidate delta in (0, {tau}) produced a certified positive "
        f"minimum (best {last_min:.3e})")
