"""Derived quantities of the polarization wave: series, peaks, fronts, widths.

A run seeded from Psi_1 sends a flipping wave down the chain; the total
polarization drops almost linearly until the wave reflects off the far end.
The peak report quantifies the usable amplification of that single-spin
trigger: the extremal polarization change dP*, its time tau*, the
amplification alpha = |dP*|/2 (macroscopic change per triggering flip) and
the contrast C = |dP*|/P(0) with P(0) = N-2, bounded above by 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import chain, exact
from .chain import ChainSpec, DominoAmplitudes

__all__ = [
    "ENGINES",
    "PolarizationSeries",
    "PeakReport",
    "series",
    "per_site_series",
    "cross_engine_deviation",
    "peak_metrics",
    "wavefront_and_width",
    "linearity_r2",
]

ENGINES = ("subspace", "closed-form", "exact-secular", "exact-rotframe")

_COARSE_STEP = 0.25
_REFINE_STEP = 0.01


@dataclass
class PolarizationSeries:
    """Total polarization on a time grid, plus optional per-site snapshots."""

    tau_grid: np.ndarray
    total_p: np.ndarray
    delta_p: np.ndarray
    n_sites: int
    engine: str
    snapshots: dict[float, np.ndarray] = field(default_factory=dict)


@dataclass
class PeakReport:
    """Location and size of the extremal polarization change."""

    n_sites: int
    tau_star: float
    delta_p_star: float
    alpha: float
    contrast: float


def _default_initial(spec: ChainSpec) -> DominoAmplitudes:
    return chain.psi_state(spec, 1)


def _is_psi1(state: DominoAmplitudes) -> bool:
    prob = np.abs(state.c) ** 2
    others = prob.sum() - prob[1]
    return prob[1] > 1.0 - 1e-12 and others < 1e-12


def _totals_on_grid(
    spec: ChainSpec,
    taus: np.ndarray,
    engine: str,
    initial: DominoAmplitudes,
    cap: int,
) -> np.ndarray:
    """Total polarization at each tau, dispatched per engine."""
    taus = np.asarray(taus, dtype=float)
    n = spec.n_sites
    if engine == "subspace":
        amps = chain.propagate_grid(initial, taus, spec)
        prob = np.abs(amps) ** 2
        return prob @ (n - 2.0 * np.arange(n + 1))
    if engine == "closed-form":
        if not _is_psi1(initial):
            raise ValueError("the closed-form engine is defined for the Psi_1 seed only")
        return chain.closed_form_totals(taus, spec)
    if engine in ("exact-secular", "exact-rotframe"):
        op = _exact_operator(spec, engine, cap)
        psi0 = exact.dense_from_subspace(initial, spec, cap=cap)
        states = exact.evolve_dense_grid(psi0, op, taus / spec.omega1)
        prob = np.abs(states) ** 2
        weights = np.zeros(2**n)
        for bit in range(n):
            weights += exact._z_diag(n, bit)
        return prob @ weights
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def _snapshot(
    spec: ChainSpec,
    tau: float,
    engine: str,
    initial: DominoAmplitudes,
    cap: int,
) -> np.ndarray:
    if engine == "subspace":
        p, _ = chain.observables(chain.propagate(initial, tau, spec), spec)
        return p
    if engine == "closed-form":
        return chain.closed_form_snapshot(tau, spec)
    op = _exact_operator(spec, engine, cap)
    psi0 = exact.dense_from_subspace(initial, spec, cap=cap)
    evolved = exact.evolve_dense(psi0, op, tau / spec.omega1)
    p, _ = exact.dense_observables(evolved, spec)
    return p


def _exact_operator(spec: ChainSpec, engine: str, cap: int) -> exact.SpinOperator:
    if engine == "exact-secular":
        return exact.build_secular_full(spec, cap=cap)
    return exact.build_rotframe(spec, cap=cap)


def series(
    spec: ChainSpec,
    tau_grid: np.ndarray,
    engine: str = "subspace",
    initial: DominoAmplitudes | None = None,
    snapshot_taus: tuple[float, ...] = (),
    cap: int = exact.DEFAULT_CAP,
) -> PolarizationSeries:
    """Polarization time series on an ascending grid starting at 0.

    Snapshot times need not lie on the grid; each requested tau gets its
    own per-site profile.  The default initial state is Psi_1.
    """
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0:
        raise ValueError("time grid is empty")
    if taus[0] != 0.0:
        raise ValueError("time grid must start at tau = 0")
    if taus.size > 1 and not np.all(np.diff(taus) > 0):
        raise ValueError("time grid must be strictly ascending")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    initial = initial if initial is not None else _default_initial(spec)
    totals = _totals_on_grid(spec, taus, engine, initial, cap)
    snapshots = {
        float(tau): _snapshot(spec, float(tau), engine, initial, cap)
        for tau in snapshot_taus
    }
    return PolarizationSeries(
        tau_grid=taus,
        total_p=totals,
        delta_p=totals - totals[0],
        n_sites=spec.n_sites,
        engine=engine,
        snapshots=snapshots,
    )


def per_site_series(
    spec: ChainSpec,
    taus: np.ndarray,
    engine: str,
    initial: DominoAmplitudes | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> np.ndarray:
    """Per-site polarizations on a grid; entry [i, m-1] is p_m at taus[i]."""
    taus = np.asarray(taus, dtype=float)
    n = spec.n_sites
    initial = initial if initial is not None else _default_initial(spec)
    if engine == "subspace":
        amps = chain.propagate_grid(initial, taus, spec)
        prob = np.abs(amps) ** 2
        cum = np.cumsum(prob, axis=1)
        return 2.0 * cum[:, :-1] - cum[:, -1:]
    if engine == "closed-form":
        if not _is_psi1(initial):
            raise ValueError("the closed-form engine is defined for the Psi_1 seed only")
        return np.array([chain.closed_form_snapshot(tau, spec) for tau in taus])
    if engine in ("exact-secular", "exact-rotframe"):
        op = _exact_operator(spec, engine, cap)
        psi0 = exact.dense_from_subspace(initial, spec, cap=cap)
        states = exact.evolve_dense_grid(psi0, op, taus / spec.omega1)
        prob = np.abs(states) ** 2
        z_rows = np.array([exact._z_diag(n, bit) for bit in range(n)])
        return prob @ z_rows.T
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def cross_engine_deviation(
    spec: ChainSpec,
    taus: np.ndarray,
    engine_a: str,
    engine_b: str,
    initial: DominoAmplitudes | None = None,
    cap: int = exact.DEFAULT_CAP,
) -> float:
    """Largest disagreement between two engines over a grid.

    Compares the total polarization and every per-site polarization at
    every grid point and returns the max absolute difference.
    """
    initial = initial if initial is not None else _default_initial(spec)
    sites_a = per_site_series(spec, taus, engine_a, initial, cap)
    sites_b = per_site_series(spec, taus, engine_b, initial, cap)
    totals_a = _totals_on_grid(spec, taus, engine_a, initial, cap)
    totals_b = _totals_on_grid(spec, taus, engine_b, initial, cap)
    return max(
        float(np.max(np.abs(sites_a - sites_b))),
        float(np.max(np.abs(totals_a - totals_b))),
    )


def peak_metrics(
    spec: ChainSpec, engine: str = "subspace", cap: int = exact.DEFAULT_CAP
) -> PeakReport:
    """Locate the extremal polarization change of the Psi_1-seeded wave.

    Two-stage search: a coarse scan of tau in [0, 1.5*N] at step 0.25,
    a 0.01-step rescan of the bracketing window, then a parabolic fit
    through the best three points.
    """
    n = spec.n_sites
    initial = _default_initial(spec)
    p_start = float(n - 2)

    coarse = np.arange(0.0, 1.5 * n + _COARSE_STEP / 2, _COARSE_STEP)
    delta = _totals_on_grid(spec, coarse, engine, initial, cap) - p_start
    i = int(np.argmax(np.abs(delta)))

    lo = max(0.0, coarse[i] - _COARSE_STEP)
    fine = lo + _REFINE_STEP * np.arange(int(round(2 * _COARSE_STEP / _REFINE_STEP)) + 1)
    delta_f = _totals_on_grid(spec, fine, engine, initial, cap) - p_start
    j = int(np.argmax(np.abs(delta_f)))

    tau_star, dp_star = fine[j], delta_f[j]
    if 0 < j < fine.size - 1:
        left, mid, right = delta_f[j - 1], delta_f[j], delta_f[j + 1]
        denom = left - 2.0 * mid + right
        if abs(denom) > 1e-14:
            shift = 0.5 * (left - right) / denom
            tau_star = fine[j] + shift * _REFINE_STEP
            dp_star = mid - 0.25 * (left - right) * shift
    return PeakReport(
        n_sites=n,
        tau_star=float(tau_star),
        delta_p_star=float(dp_star),
        alpha=abs(dp_star) / 2.0,
        contrast=abs(dp_star) / p_start,
    )


def _level_crossings(p: np.ndarray, level: float) -> list[float]:
    """Interpolated 1-based site coordinates where the profile crosses level."""
    out = []
    for i in range(p.size - 1):
        lo, hi = p[i] - level, p[i + 1] - level
        if lo == 0.0:
            out.append(float(i + 1))
        elif lo * hi < 0.0:
            out.append(i + 1 + lo / (lo - hi))
    if p[-1] == level:
        out.append(float(p.size))
    return out


def wavefront_and_width(p: np.ndarray) -> tuple[float, float]:
    """Front position and domain-wall width of a per-site profile.

    The front is the rightmost zero crossing (0 when the profile never
    changes sign).  The width spans from the last -0.9 crossing at or left
    of the front to the first +0.9 crossing at or right of it; 0 when
    either threshold is never crossed around the front.
    """
    p = np.asarray(p, dtype=float)
    if p.size < 3:
        raise ValueError(f"need at least 3 sites, got {p.size}")
    zeros = _level_crossings(p, 0.0)
    if not zeros:
        return 0.0, 0.0
    front = zeros[-1]
    left = [x for x in _level_crossings(p, -0.9) if x <= front]
    right = [x for x in _level_crossings(p, 0.9) if x >= front]
    if not left or not right:
        return front, 0.0
    return front, right[0] - left[-1]


def linearity_r2(series_data: PolarizationSeries, tau_lo: float, tau_hi: float) -> float:
    """R**2 of a straight-line fit to delta_p on the window [tau_lo, tau_hi]."""
    mask = (series_data.tau_grid >= tau_lo) & (series_data.tau_grid <= tau_hi)
    x = series_data.tau_grid[mask]
    y = series_data.delta_p[mask]
    if x.size < 3:
        raise ValueError("window contains fewer than 3 grid points")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return 1.0 - float(np.sum(resid**2)) / ss_tot
