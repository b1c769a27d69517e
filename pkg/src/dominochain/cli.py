"""Command-line front end: simulate, validate, sweep, and peak subcommands.

Exit codes: 0 success (and validation within tolerance), 1 validation
failure or I/O trouble, 2 usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import chain, export, metrics, plotting
from .chain import ChainSpec, DominoAmplitudes
from .exact import DEFAULT_CAP

__all__ = ["RunConfig", "parse_args", "run", "main"]

_FORMATS = ("csv", "json", "svg")


@dataclass
class RunConfig:
    subcommand: str
    n_sites: int = 0
    n_values: list[int] = field(default_factory=list)
    engine: str = "subspace"
    tau_max: float | None = None
    tau_step: float = 0.1
    snapshots: list[float] = field(default_factory=list)
    initial: str = "psi1"
    omega1: float = 1.0
    j_coupling: float = 10.0
    out: str | None = None
    fmt: str = "csv"
    plot: str | None = None
    tolerance: float = 1e-10
    cap: int = DEFAULT_CAP


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--engine", choices=metrics.ENGINES, default="subspace",
                        help="which computation backend to use")
    parser.add_argument("--omega1", type=float, default=1.0,
                        help="drive amplitude (default 1: times are dimensionless)")
    parser.add_argument("--j", type=float, default=10.0, dest="j_coupling",
                        help="Ising coupling constant, used by the exact engines")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest chain length the exact engines accept")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tau-max", type=float, default=None,
                        help="end of the time grid (default 1.5*N)")
    parser.add_argument("--tau-step", type=float, default=0.1,
                        help="time grid spacing")


def parse_args(argv: list[str] | None = None) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="dominochain",
        description="Simulate the stimulated spin-flip wave in a driven Ising chain.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sim = sub.add_parser("simulate", help="run one chain and export the series")
    sim.add_argument("--n", type=int, required=True, dest="n_sites")
    _add_grid(sim)
    sim.add_argument("--snapshots", type=str, default="",
                     help="comma-separated times for per-site profiles")
    sim.add_argument("--initial", type=str, default="psi1",
                     help="psi0 | psi1 | super:a_re,a_im,b_re,b_im")
    sim.add_argument("--out", type=str, required=True)
    sim.add_argument("--format", choices=_FORMATS, default="csv", dest="fmt")
    sim.add_argument("--plot", type=str, default=None,
                     help="also render the series figure to this path")
    _add_common(sim)

    val = sub.add_parser("validate", help="compare an engine against the subspace engine")
    val.add_argument("--n", type=int, required=True, dest="n_sites")
    _add_grid(val)
    val.add_argument("--initial", type=str, default="psi1")
    val.add_argument("--tolerance", type=float, default=1e-10)
    _add_common(val)

    swp = sub.add_parser("sweep", help="peak metrics for several chain lengths")
    swp.add_argument("--n-values", type=str, default="25,50,75,100")
    swp.add_argument("--out", type=str, default=None)
    swp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    swp.add_argument("--plot", type=str, default=None,
                     help="render the family of polarization-change curves")
    _add_common(swp)

    pk = sub.add_parser("peak", help="peak metrics for a single chain length")
    pk.add_argument("--n", type=int, required=True, dest="n_sites")
    pk.add_argument("--out", type=str, default=None)
    pk.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    _add_common(pk)

    ns = parser.parse_args(argv)
    config = RunConfig(subcommand=ns.subcommand)
    for name in vars(ns):
        if name == "n_values":
            config.n_values = [int(x) for x in ns.n_values.split(",") if x]
        elif name == "snapshots":
            config.snapshots = [float(x) for x in ns.snapshots.split(",") if x]
        else:
            setattr(config, name, getattr(ns, name))
    return config


def _spec(config: RunConfig, n: int | None = None) -> ChainSpec:
    return ChainSpec(
        n_sites=n if n is not None else config.n_sites,
        omega1=config.omega1,
        j_coupling=config.j_coupling,
    )


def _initial_state(config: RunConfig, spec: ChainSpec) -> DominoAmplitudes:
    text = config.initial
    if text == "psi0":
        return chain.psi_state(spec, 0)
    if text == "psi1":
        return chain.psi_state(spec, 1)
    if text.startswith("super:"):
        parts = [float(x) for x in text.removeprefix("super:").split(",")]
        if len(parts) != 4:
            raise ValueError("superposition initial state needs a_re,a_im,b_re,b_im")
        return chain.superposition_state(
            spec, complex(parts[0], parts[1]), complex(parts[2], parts[3])
        )
    raise ValueError(f"unknown initial state {text!r}")


def _grid(config: RunConfig, n: int) -> np.ndarray:
    if config.tau_step <= 0:
        raise ValueError(f"tau step must be > 0, got {config.tau_step}")
    tau_max = config.tau_max if config.tau_max is not None else 1.5 * n
    if tau_max < config.tau_step:
        raise ValueError("tau-max must be at least one tau-step")
    return np.arange(0.0, tau_max + 0.5 * config.tau_step, config.tau_step)


def _sibling(path: Path, tag: str, suffix: str | None = None) -> Path:
    return path.with_name(path.stem + tag + (suffix or path.suffix))


def _run_simulate(config: RunConfig) -> int:
    spec = _spec(config)
    initial = _initial_state(config, spec)
    result = metrics.series(
        spec,
        _grid(config, spec.n_sites),
        engine=config.engine,
        initial=initial,
        snapshot_taus=tuple(config.snapshots),
        cap=config.cap,
    )
    out = Path(config.out)
    if config.fmt == "csv":
        export.write_series_csv(result, out)
        for tau, profile in result.snapshots.items():
            export.write_snapshot_csv(profile, _sibling(out, f"_snapshot_{tau:g}"))
    elif config.fmt == "json":
        export.write_series_json(result, spec, out)
        for tau, profile in result.snapshots.items():
            export.write_snapshot_json(
                profile, tau, spec, config.engine, _sibling(out, f"_snapshot_{tau:g}")
            )
    else:
        plotting.save_series_plot([result], out)
        for tau, profile in result.snapshots.items():
            plotting.save_snapshot_plot(profile, tau, _sibling(out, f"_snapshot_{tau:g}"))
    if config.plot:
        plot = Path(config.plot)
        plotting.save_series_plot([result], plot)
        for tau, profile in result.snapshots.items():
            plotting.save_snapshot_plot(profile, tau, _sibling(plot, f"_snapshot_{tau:g}"))
    print(f"wrote {config.out} ({result.tau_grid.size} grid points, "
          f"{len(result.snapshots)} snapshots)")
    return 0


def _run_validate(config: RunConfig) -> int:
    if config.engine == "subspace":
        raise ValueError("pick the engine to compare against the subspace reference")
    spec = _spec(config)
    initial = _initial_state(config, spec)
    taus = _grid(config, spec.n_sites)
    deviation = metrics.cross_engine_deviation(
        spec, taus, "subspace", config.engine, initial=initial, cap=config.cap
    )
    ok = deviation < config.tolerance
    print(f"engines: subspace vs {config.engine}")
    print(f"grid: {taus.size} points on [0, {taus[-1]:g}]")
    print(f"max deviation (total and per-site): {deviation:.6e}")
    print(f"tolerance: {config.tolerance:g} -> {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _peak_rows(config: RunConfig, n_values: list[int]) -> list[metrics.PeakReport]:
    return [
        metrics.peak_metrics(_spec(config, n), engine=config.engine, cap=config.cap)
        for n in n_values
    ]


def _print_peaks(reports: list[metrics.PeakReport]) -> None:
    print(f"{'n_sites':>8} {'tau_star':>12} {'delta_p_star':>14} {'alpha':>12} {'contrast':>10}")
    for r in reports:
        print(f"{r.n_sites:>8d} {r.tau_star:>12.4f} {r.delta_p_star:>14.4f} "
              f"{r.alpha:>12.4f} {r.contrast:>10.4f}")


def _write_peaks(config: RunConfig, reports: list[metrics.PeakReport]) -> None:
    if config.out is None:
        return
    if config.fmt == "json":
        export.write_peaks_json(
            reports, _spec(config, reports[0].n_sites), config.engine, config.out
        )
    else:
        export.write_peaks_csv(reports, config.out)


def _run_sweep(config: RunConfig) -> int:
    if not config.n_values:
        raise ValueError("sweep needs at least one chain length")
    reports = _peak_rows(config, config.n_values)
    _print_peaks(reports)
    _write_peaks(config, reports)
    if config.plot:
        curves = []
        for n in config.n_values:
            spec = _spec(config, n)
            grid = np.arange(0.0, 1.5 * n + 0.125, 0.25)
            curves.append(metrics.series(spec, grid, engine=config.engine, cap=config.cap))
        plotting.save_series_plot(
            curves, config.plot, labels=[f"N = {n}" for n in config.n_values]
        )
    return 0


def _run_peak(config: RunConfig) -> int:
    reports = _peak_rows(config, [config.n_sites])
    _print_peaks(reports)
    _write_peaks(config, reports)
    return 0


def run(config: RunConfig) -> int:
    handlers = {
        "simulate": _run_simulate,
        "validate": _run_validate,
        "sweep": _run_sweep,
        "peak": _run_peak,
    }
    return handlers[config.subcommand](config)


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_args(argv)
        return run(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
