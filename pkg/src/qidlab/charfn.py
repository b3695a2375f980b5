"""Characteristic-function evaluation, zero scanning and the
distinguished logarithm.

For the grid densities of :mod:`qidlab.dist` the characteristic
function is evaluated in closed form: the transform of a unit hat of
width h at node x is h * exp(itx) * sinc(th/2)^2, so the value is exact
for the represented law and no oscillatory quadrature is needed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import config
from .dist import Law
from .errors import (BranchTrackingError, IdenticallyZeroImagError, InputError,
                     LawShapeError, WindowError, ZeroOnPathError)

_CHUNK = 1 << 15


@dataclass(frozen=True)
class ZeroFreeCertificate:
    """Scan evidence that |f| stays positive: window, resolution,
    minimum found and where.

    tail_bound, when present, bounds the sampled modulus of the
    continuous-part contribution beyond the window, so the atom
    coefficient dominates out there.
    """

    window_T: float
    grid_step: float
    min_modulus: float
    argmin_t: float
    tail_bound: float | None = None

    def __post_init__(self):
        if self.window_T <= 0 or self.grid_step <= 0:
            raise InputError("window and grid step must be positive")
        if self.min_modulus < 0:
            raise InputError("min_modulus must be nonnegative")


@dataclass(frozen=True)
class LogBranch:
    """Continuous branch of log f on a uniform t grid with log f(0) = 0."""

    grid: np.ndarray
    values: np.ndarray
    branch_step: float


class CharFn:
    """Evaluator of t -> integral of exp(itx) dF(x) for a represented law."""

    def __init__(self, law: Law):
        self.law = law
        self._w = law.discrete_weight
        if law.discrete is not None:
            self._locs = law.discrete.locations
            self._masses = law.discrete.masses
        else:
            self._locs = self._masses = None
        if law.continuous is not None:
            d = law.continuous
            self._nodes = d.nodes
            self._node_w = d.grid_step * d.samples
            self._h = d.grid_step
        else:
            self._nodes = None
        self._profile: tuple[float, np.ndarray, np.ndarray, float] | None = None

    def __call__(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(t_arr.shape, dtype=complex)
        for lo in range(0, t_arr.size, _CHUNK):
            tc = t_arr[lo:lo + _CHUNK]
            acc = np.zeros(tc.shape, dtype=complex)
            if self._locs is not None:
                acc += self._w * (np.exp(1j * np.outer(tc, self._locs)) @ self._masses)
            if self._nodes is not None:
                kernel = np.sinc(tc * self._h / (2.0 * np.pi)) ** 2
                acc += (1.0 - self._w) * kernel * (
                    np.exp(1j * np.outer(tc, self._nodes)) @ self._node_w)
            out[lo:lo + _CHUNK] = acc
        return out if np.ndim(t) else complex(out[0])

    def continuous_part(self, t):
        """Normalized CF of the continuous part alone (own mass 1)."""
        if self._nodes is None:
            raise LawShapeError("law has no density part")
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(t_arr.shape, dtype=complex)
        for lo in range(0, t_arr.size, _CHUNK):
            tc = t_arr[lo:lo + _CHUNK]
            kernel = np.sinc(tc * self._h / (2.0 * np.pi)) ** 2
            out[lo:lo + _CHUNK] = kernel * (
                np.exp(1j * np.outer(tc, self._nodes)) @ self._node_w)
        return out if np.ndim(t) else complex(out[0])

    def eval_grid(self, t0: float, dt: float, n: int) -> np.ndarray:
        """CF values on the uniform grid t0 + dt*arange(n).

        The density-part sum over grid nodes at uniformly spaced t is a
        chirp-z transform, evaluated with FFTs; the result matches the
        direct sum to ~1e-12 and turns wide scans from O(n*nodes) into
        O(n log n).
        """
        ts = t0 + dt * np.arange(n)
        out = np.zeros(n, dtype=complex)
        if self._locs is not None:
            out += self._w * (np.exp(1j * np.outer(ts, self._locs)) @ self._masses)
        if self._nodes is not None:
            from scipy.signal import czt
            h = self._h
            x = self._node_w * np.exp(1j * t0 * h * np.arange(self._nodes.size))
            X = czt(x, m=n, w=np.exp(1j * dt * h), a=1.0)
            kernel = np.sinc(ts * h / (2.0 * np.pi)) ** 2
            out += (1.0 - self._w) * kernel * np.exp(1j * ts * self._nodes[0]) * X
        return out

    def decay_profile(self, t_max: float = config.DECAY_TMAX):
        """Sampled right-tail suprema of the continuous-part modulus.

        Returns (ts, tail_max, period): tail_max[i] is the maximum of
        the sampled |continuous CF| on [ts[i], t_max]. Computed once and
        cached; the sampling resolves the CF oscillation scale
        2*pi/width.
        """
        if self._nodes is None:
            raise LawShapeError("law has no density part")
        if self._profile is None or self._profile[0] < t_max:
            width = max(float(self._nodes[-1] - self._nodes[0]), self._h)
            period = 2.0 * math.pi / width
            step = period / config.DECAY_SAMPLES_PER_OSCILLATION
            n = int(math.ceil(t_max / step))
            ts = step * np.arange(1, n + 1)
            pure = CharFn(Law(0.0, None, self.law.continuous))
            mods = np.abs(pure.eval_grid(step, step, n))
            tail_max = np.maximum.accumulate(mods[::-1])[::-1]
            # a wider profile is conservative for narrower queries: its
            # right-tail suprema only grow, so keep the widest one
            self._profile = (t_max, ts, tail_max, period)
        return self._profile[1:]


def cf_eval(f: CharFn, t):
    """Functional form of CharFn evaluation (exact finite sums)."""
    return f(t)


def _refine_minimum(fabs, a: float, b: float, c: float, fb: float) -> tuple[float, float]:
    """Golden-section polish of a bracketed local minimum of fabs."""
    try:
        res = minimize_scalar(fabs, bracket=(a, b, c), method="golden",
                              options={"xtol": config.REFINE_XTOL})
        if res.fun < fb:
            return float(res.x), float(res.fun)
    except Exception:
        pass
    return b, fb


def min_modulus_scan(f: CharFn, T: float, step: float, refine: bool = True) -> ZeroFreeCertificate:
    """Scan |f| on a uniform grid over [-T, T]; optionally polish the
    lowest local minima by golden section. The certificate records the
    smallest modulus seen and where.

    Characteristic functions of real laws satisfy f(-t) = conj(f(t)),
    so the grid work runs on [0, T] and covers the stated window.
    """
    if T <= 0 or step <= 0:
        raise InputError("T and step must be positive")
    n = int(math.ceil(T / step))
    ts = step * np.arange(n + 1)
    mods = np.abs(f.eval_grid(0.0, step, n + 1))
    i_min = int(np.argmin(mods))
    best_t, best_v = float(ts[i_min]), float(mods[i_min])
    if refine:
        fabs = lambda t: float(abs(f(float(t))))
        interior = np.arange(1, ts.size - 1)
        is_loc = (mods[interior] <= mods[interior - 1]) & (mods[interior] <= mods[interior + 1])
        cand = interior[is_loc]
        cand = cand[np.argsort(mods[cand])][:config.REFINE_TOP]
        for i in cand:
            t_r, v_r = _refine_minimum(fabs, ts[i - 1], ts[i], ts[i + 1], mods[i])
            if v_r < best_v:
                best_t, best_v = t_r, v_r
    return ZeroFreeCertificate(window_T=float(n * step), grid_step=step,
                               min_modulus=best_v, argmin_t=best_t)


def decay_window(f: CharFn, threshold: float, t_max: float = config.DECAY_TMAX) -> float:
    """Smallest T* such that the sampled modulus of the continuous-part
    CF stays below threshold on (T*, t_max].

    The scan resolves the CF oscillation scale 2*pi/width and the
    returned window is padded by one oscillation period, so the report
    stays conservative with respect to between-sample peaks. Raises
    WindowError when even the tail of the sampled range is not below
    threshold.
    """
    if threshold <= 0:
        raise InputError("threshold must be positive")
    if f.law.continuous is None:
        raise LawShapeError("decay_window needs a density part")
    ts, tail_max, period = f.decay_profile(t_max)
    below = np.nonzero(tail_max < threshold)[0]
    if below.size == 0:
        raise WindowError(
            f"sampled |cf| does not drop below {threshold} up to t={t_max}")
    return float(ts[below[0]]) + period


def imag_zero_scan(f0: CharFn, gamma0: float, T: float, step: float) -> list[float]:
    """Refined roots of Im(f0(t) e^{-it*gamma0}) in [-T, T].

    Sign changes on the grid are polished by bisection. Raises
    IdenticallyZeroImagError when the imaginary part vanishes on the
    whole grid (recentered symmetric law), since every t would be a
    root.
    """
    if T <= 0 or step <= 0:
        raise InputError("T and step must be positive")
    g = lambda t: np.imag(f0(t) * np.exp(-1j * gamma0 * np.asarray(t, dtype=float)))
    n = int(math.ceil(T / step))
    ts = step * np.arange(-n, n + 1)
    vals = np.imag(f0.eval_grid(-n * step, step, 2 * n + 1) * np.exp(-1j * gamma0 * ts))
    scale = float(np.max(np.abs(vals)))
    if scale < 1e-12:
        raise IdenticallyZeroImagError(
            "imaginary part is identically zero on the scan grid")
    # grid values at float-noise level are roots themselves and must not
    # seed sign-change brackets (their sign is meaningless)
    zero_tol = 1e-12 * scale
    roots: list[float] = []
    sign = np.sign(vals)
    sign[np.abs(vals) <= zero_tol] = 0
    roots.extend(float(ts[i]) for i in np.nonzero(sign == 0)[0])
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        a, b = float(ts[i]), float(ts[i + 1])
        fa = float(g(a))
        for _ in range(80):
            m = 0.5 * (a + b)
            fm = float(g(m))
            if fm == 0.0 or (b - a) < config.REFINE_XTOL:
                a = b = m
                break
            if (fa < 0) == (fm < 0):
                a, fa = m, fm
            else:
                b = m
        r = 0.5 * (a + b)
        if abs(float(g(r))) <= 1e-7 * scale:
            roots.append(r)
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > max(10 * config.REFINE_XTOL, 1e-12):
            out.append(r)
    return out


def _track_branch(fn, T: float, step: float, floor: float,
                  max_halvings: int = config.MAX_BRANCH_HALVINGS) -> tuple[np.ndarray, np.ndarray]:
    """Continuous log of fn over [0, T], halving the step until each
    increment of log is below pi/2."""
    cur = step
    for _ in range(max_halvings + 1):
        n = int(round(T / cur))
        ts = np.linspace(0.0, n * cur, n + 1)
        vals = np.asarray(fn(ts), dtype=complex)
        mods = np.abs(vals)
        if float(mods.min()) < floor:
            raise ZeroOnPathError(
                f"modulus {mods.min():.3e} below floor {floor:.3e} at "
                f"t={ts[int(np.argmin(mods))]:.6g}: possible zero on path")
        ratios = vals[1:] / vals[:-1]
        steps_log = np.log(ratios)
        if float(np.max(np.abs(steps_log))) < 0.5 * math.pi:
            logs = np.concatenate(([0.0], np.cumsum(steps_log)))
            # absorb the modulus of f(0) (1 for probability laws) exactly
            logs += cmath.log(vals[0]) - logs[0]
            return ts, logs
        cur *= 0.5
    raise BranchTrackingError(
        "phase increment stayed >= pi/2 at the minimal tracking step")


def distinguished_log(f: CharFn, T: float, step: float,
                      floor: float = config.LOG_MODULUS_FLOOR) -> LogBranch:
    """Continuous branch of log f on [0, T] with log f(0) = 0.

    The step is halved until every per-step increment of the branch is
    below pi/2, which pins the branch uniquely given no zero between
    samples at the final resolution.
    """
    if T <= 0 or step <= 0:
        raise InputError("T and step must be positive")
    ts, logs = _track_branch(f, T, step, floor)
    return LogBranch(grid=ts, values=logs, branch_step=float(ts[1] - ts[0]))
