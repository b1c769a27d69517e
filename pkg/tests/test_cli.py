import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from dominochain.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN_ARGS = ["simulate", "--n", "8", "--tau-max", "20", "--tau-step", "0.5",
               "--format", "csv"]


def run_cli(args: list[str]) -> int:
    return main([str(a) for a in args])


def test_golden_series_n8(tmp_path: Path, regen_golden):
    out = tmp_path / "series.csv"
    assert run_cli(GOLDEN_ARGS + ["--out", out]) == 0
    golden = GOLDEN_DIR / "series_n8_subspace.csv"
    if regen_golden:
        golden.write_bytes(out.read_bytes())
    assert out.read_bytes() == golden.read_bytes()


def test_byte_identical_reruns(tmp_path: Path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["simulate", "--n", "10", "--tau-max", "5", "--tau-step", "0.25",
            "--snapshots", "0,2.5"]
    assert run_cli(args + ["--out", first]) == 0
    assert run_cli(args + ["--out", second]) == 0
    assert first.read_bytes() == second.read_bytes()
    snap_a = tmp_path / "a_snapshot_2.5.csv"
    snap_b = tmp_path / "b_snapshot_2.5.csv"
    assert snap_a.read_bytes() == snap_b.read_bytes()
    ja, jb = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(args + ["--out", ja, "--format", "json"]) == 0
    assert run_cli(args + ["--out", jb, "--format", "json"]) == 0
    assert ja.read_bytes() == jb.read_bytes()


def test_simulate_snapshot_files_and_schema(tmp_path: Path):
    out = tmp_path / "run.csv"
    code = run_cli(["simulate", "--n", "3", "--tau-max", "1", "--tau-step", "0.5",
                    "--snapshots", "0", "--out", out])
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "tau,total_polarization,delta_p"
    assert rows[1] == "0,1,0"  # N - 2 = 1 at tau = 0
    snap = (tmp_path / "run_snapshot_0.csv").read_text().splitlines()
    assert snap == ["site,polarization", "1,-1", "2,1", "3,1"]


def test_csv_round_trip_12_digits(tmp_path: Path):
    out = tmp_path / "series.csv"
    assert run_cli(["simulate", "--n", "9", "--tau-max", "7", "--tau-step", "0.7",
                    "--out", out]) == 0
    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    from dominochain import ChainSpec, series

    grid = np.arange(0.0, 7.35, 0.7)
    s = series(ChainSpec(n_sites=9), grid)
    for row, tau, total in zip(rows, s.tau_grid, s.total_p):
        assert float(row["tau"]) == float(f"{tau:.12g}")
        assert float(row["total_polarization"]) == float(f"{total:.12g}")


def test_json_manifest(tmp_path: Path):
    out = tmp_path / "series.json"
    assert run_cli(["simulate", "--n", "5", "--tau-max", "2", "--tau-step", "1",
                    "--snapshots", "1", "--out", out, "--format", "json",
                    "--engine", "closed-form"]) == 0
    payload = json.loads(out.read_text())
    assert payload["manifest"]["n_sites"] == 5
    assert payload["manifest"]["omega1"] == 1.0
    assert payload["manifest"]["engine"] == "closed-form"
    assert "version" in payload["manifest"]
    assert payload["tau"] == [0.0, 1.0, 2.0]
    assert payload["total_polarization"][0] == 3.0
    snap = json.loads((tmp_path / "series_snapshot_1.json").read_text())
    assert snap["site"] == [1, 2, 3, 4, 5]
    assert snap["manifest"]["tau"] == 1.0


def test_svg_output(tmp_path: Path):
    out = tmp_path / "series.svg"
    assert run_cli(["simulate", "--n", "6", "--tau-max", "3", "--tau-step", "0.5",
                    "--snapshots", "1.5", "--out", out, "--format", "svg"]) == 0
    text = out.read_text()
    assert "<svg" in text
    assert (tmp_path / "series_snapshot_1.5.svg").exists()


def test_plot_alongside_csv(tmp_path: Path):
    out = tmp_path / "series.csv"
    fig = tmp_path / "series_fig.svg"
    assert run_cli(["simulate", "--n", "6", "--tau-max", "3", "--tau-step", "0.5",
                    "--out", out, "--plot", fig]) == 0
    assert out.exists() and fig.exists()
    assert "<svg" in fig.read_text()


def test_validate_pass_and_fail():
    base = ["validate", "--n", "8", "--engine", "exact-secular",
            "--tau-max", "10", "--tau-step", "0.5"]
    assert run_cli(base + ["--tolerance", "1e-10"]) == 0
    assert run_cli(base + ["--tolerance", "1e-16"]) == 1


def test_validate_rotframe_physical_tolerance():
    args = ["validate", "--n", "6", "--engine", "exact-rotframe",
            "--tau-max", "5", "--tau-step", "0.5", "--j", "20"]
    assert run_cli(args + ["--tolerance", "1e-10"]) == 1
    assert run_cli(args + ["--tolerance", "0.5"]) == 0


def test_validate_needs_comparison_engine():
    assert run_cli(["validate", "--n", "6", "--engine", "subspace"]) == 2


def test_peak_and_sweep_outputs(tmp_path: Path, capsys):
    out = tmp_path / "peaks.csv"
    assert run_cli(["sweep", "--n-values", "25,50", "--out", out]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "n_sites,tau_star,delta_p_star,alpha,contrast"
    assert len(rows) == 3
    assert run_cli(["peak", "--n", "25"]) == 0
    printed = capsys.readouterr().out
    assert "tau_star" in printed
    jout = tmp_path / "peaks.json"
    assert run_cli(["peak", "--n", "25", "--out", jout, "--format", "json"]) == 0
    payload = json.loads(jout.read_text())
    assert payload["peaks"][0]["n_sites"] == 25
    assert 1.00 <= payload["peaks"][0]["tau_star"] / 25 <= 1.12


def test_sweep_family_plot(tmp_path: Path):
    fig = tmp_path / "family.svg"
    assert run_cli(["sweep", "--n-values", "10,15", "--plot", fig]) == 0
    assert "<svg" in fig.read_text()


def test_config_errors_exit_2(tmp_path: Path):
    out = tmp_path / "x.csv"
    assert run_cli(["simulate", "--n", "8", "--tau-max", "2", "--tau-step", "-1",
                    "--out", out]) == 2
    assert run_cli(["simulate", "--n", "8", "--tau-max", "0.05", "--tau-step", "0.1",
                    "--out", out]) == 2
    assert run_cli(["simulate", "--n", "2", "--tau-max", "1", "--tau-step", "0.1",
                    "--out", out]) == 2
    assert run_cli(["simulate", "--n", "20", "--tau-max", "1", "--tau-step", "0.1",
                    "--engine", "exact-secular", "--out", out]) == 2
    assert run_cli(["simulate", "--n", "8", "--tau-max", "1", "--tau-step", "0.1",
                    "--initial", "super:1,0,1,0", "--out", out]) == 2
    assert run_cli(["simulate", "--n", "8", "--tau-max", "1", "--tau-step", "0.1",
                    "--initial", "bogus", "--out", out]) == 2


def test_unwritable_path_reports_and_exits_1(tmp_path: Path, capsys):
    missing = tmp_path / "no_such_dir" / "deep" / "series.csv"
    missing.parent.parent.touch()  # a file where a directory is needed
    code = run_cli(["simulate", "--n", "5", "--tau-max", "1", "--tau-step", "0.5",
                    "--out", missing])
    assert code == 1
    assert "no_such_dir" in capsys.readouterr().err


def test_usage_error_exits_2_via_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--n", "8", "--engine", "warp-drive", "--out", "x.csv"])
    assert exc.value.code == 2


def test_subprocess_entry_point(tmp_path: Path):
    out = tmp_path / "series.csv"
    cmd = [sys.executable, "-m", "dominochain", "simulate", "--n", "8",
           "--tau-max", "2", "--tau-step", "0.5", "--out", str(out)]
    cp = subprocess.run(cmd, capture_output=True, text=True)
    assert cp.returncode == 0
    assert out.exists()
    assert "wrote" in cp.stdout


def test_full_size_snapshot_run(tmp_path: Path):
    # the N=100 run with profiles at six times, including the peak at 105.7
    out = tmp_path / "wave.csv"
    snapshots = "0,25,50,75,100,105.7"
    assert run_cli(["simulate", "--n", "100", "--tau-max", "110", "--tau-step", "0.1",
                    "--snapshots", snapshots, "--out", out]) == 0
    files = sorted(tmp_path.glob("wave_snapshot_*.csv"))
    assert len(files) == 6
    peak_rows = (tmp_path / "wave_snapshot_105.7.csv").read_text().splitlines()
    assert peak_rows[0] == "site,polarization"
    assert len(peak_rows) == 101
    values = np.array([float(r.split(",")[1]) for r in peak_rows[1:]])
    assert values.mean() < -0.5  # wave has covered most of the chain


def test_superposition_initial_via_cli(tmp_path: Path):
    out = tmp_path / "series.csv"
    assert run_cli(["simulate", "--n", "6", "--tau-max", "2", "--tau-step", "0.5",
                    "--initial", "super:0.6,0,0.8,0", "--out", out]) == 0
    rows = out.read_text().splitlines()
    # P(0) = |a|^2 * N + |b|^2 * (N - 2) = 0.36*6 + 0.64*4
    assert float(rows[1].split(",")[1]) == pytest.approx(0.36 * 6 + 0.64 * 4, abs=1e-12)
