"""Delimited-text and JSON writers for series, snapshots, and peak tables.

All numeric fields are rendered with 12 significant digits, and files are
written with '\\n' line endings regardless of platform so identical runs
produce byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .chain import ChainSpec
from .metrics import PeakReport, PolarizationSeries

__all__ = [
    "format_number",
    "write_series_csv",
    "write_series_json",
    "write_snapshot_csv",
    "write_snapshot_json",
    "write_peaks_csv",
    "write_peaks_json",
]


def format_number(x: float) -> str:
    return f"{x:.12g}"


def _round_trip(x: float) -> float:
    return float(format_number(x))


def _manifest(spec: ChainSpec, engine: str) -> dict:
    return {
        "n_sites": spec.n_sites,
        "omega1": _round_trip(spec.omega1),
        "engine": engine,
        "version": __version__,
    }


def _write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def write_series_csv(series: PolarizationSeries, path: str | Path) -> None:
    lines = ["tau,total_polarization,delta_p"]
    for tau, total, delta in zip(series.tau_grid, series.total_p, series.delta_p):
        lines.append(
            f"{format_number(tau)},{format_number(total)},{format_number(delta)}"
        )
    _write_text(path, "\n".join(lines) + "\n")


def write_series_json(
    series: PolarizationSeries, spec: ChainSpec, path: str | Path
) -> None:
    payload = {
        "manifest": _manifest(spec, series.engine),
        "tau": [_round_trip(x) for x in series.tau_grid],
        "total_polarization": [_round_trip(x) for x in series.total_p],
        "delta_p": [_round_trip(x) for x in series.delta_p],
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def write_snapshot_csv(per_site: np.ndarray, path: str | Path) -> None:
    lines = ["site,polarization"]
    for m, value in enumerate(per_site, start=1):
        lines.append(f"{m},{format_number(value)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_snapshot_json(
    per_site: np.ndarray,
    tau: float,
    spec: ChainSpec,
    engine: str,
    path: str | Path,
) -> None:
    manifest = _manifest(spec, engine)
    manifest["tau"] = _round_trip(tau)
    payload = {
        "manifest": manifest,
        "site": list(range(1, per_site.size + 1)),
        "polarization": [_round_trip(x) for x in per_site],
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")


_PEAK_FIELDS = ("n_sites", "tau_star", "delta_p_star", "alpha", "contrast")


def write_peaks_csv(reports: list[PeakReport], path: str | Path) -> None:
    lines = [",".join(_PEAK_FIELDS)]
    for r in reports:
        lines.append(
            f"{r.n_sites},{format_number(r.tau_star)},{format_number(r.delta_p_star)},"
            f"{format_number(r.alpha)},{format_number(r.contrast)}"
        )
    _write_text(path, "\n".join(lines) + "\n")


def write_peaks_json(
    reports: list[PeakReport], spec: ChainSpec, engine: str, path: str | Path
) -> None:
    payload = {
        "manifest": _manifest(spec, engine),
        "peaks": [
            {
                "n_sites": r.n_sites,
                "tau_star": _round_trip(r.tau_star),
                "delta_p_star": _round_trip(r.delta_p_star),
                "alpha": _round_trip(r.alpha),
                "contrast": _round_trip(r.contrast),
            }
            for r in reports
        ],
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")
