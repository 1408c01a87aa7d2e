"""CSV and JSON files for trajectories, ensemble summaries, fits and manifests.

Reals are written with ``repr`` (shortest string that round-trips) and
counts as plain integers. Files are UTF-8 with LF line endings so that two
runs with the same config produce byte-identical output.
"""
from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .experiment import EnsembleSummary, ExperimentConfig, ReproductionReport, SummaryRow
from .fit import PowerLawFit
from .tally import CheckpointRecord, Trajectory

SUMMARY_COLUMNS = ["n", "mean_range", "se_range", "mean_rel_range", "se_rel_range"]
FIT_KEYS = ["exponent", "log_amplitude", "exponent_se", "r_squared", "n_points",
            "dropped_points", "fit_window_min_n"]

SUMMARY_NAME = "summary.csv"
ALPHA_FIT_NAME = "fit_alpha.json"
BETA_FIT_NAME = "fit_beta.json"
MANIFEST_NAME = "manifest.json"


def trajectory_name(run_id: int) -> str:
    return f"trajectory_run{run_id:03d}.csv"


def trajectory_columns(k: int) -> list[str]:
    return (["n"] + [f"count_{i}" for i in range(k)] + [f"f_{i}" for i in range(k)]
            + ["range", "rel_range"])


def _open_write(path):
    return open(path, "w", encoding="utf-8", newline="")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    k = traj.checkpoints[0].k
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(trajectory_columns(k))
        for c in traj.checkpoints:
            w.writerow([c.n, *c.counts, *(repr(f) for f in c.rel_freqs),
                        c.range, repr(c.rel_range)])


def read_trajectory_csv(path) -> list[CheckpointRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        return []
    k = sum(1 for col in rows[0] if col.startswith("count_"))
    return [
        CheckpointRecord(
            n=int(r["n"]),
            counts=tuple(int(r[f"count_{i}"]) for i in range(k)),
            rel_freqs=tuple(float(r[f"f_{i}"]) for i in range(k)),
            range=int(r["range"]),
            rel_range=float(r["rel_range"]),
        )
        for r in rows
    ]


def write_summary_csv(summary: EnsembleSummary, path) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for row in summary.checkpoints:
            w.writerow([row.n, repr(row.mean_range), repr(row.se_range),
                        repr(row.mean_rel_range), repr(row.se_rel_range)])


def read_summary_csv(path, num_runs: int = 0) -> EnsembleSummary:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [SummaryRow(n=int(r["n"]), mean_range=float(r["mean_range"]),
                           se_range=float(r["se_range"]),
                           mean_rel_range=float(r["mean_rel_range"]),
                           se_rel_range=float(r["se_rel_range"]))
                for r in csv.DictReader(fh)]
    return EnsembleSummary(checkpoints=rows, num_runs=num_runs)


def read_columns(path) -> dict[str, list[str]]:
    """Raw string columns of a headed CSV, keyed by header name."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return {}
        header = [h.strip() for h in header]
        cols = {h: [] for h in header}
        for row in reader:
            if not row:
                continue
            for h, v in zip(header, row):
                cols[h].append(v)
    return cols


def fit_to_json(fit: PowerLawFit) -> str:
    d = fit.to_dict()
    return json.dumps({key: d[key] for key in FIT_KEYS}, indent=2) + "\n"


def write_fit_json(fit: PowerLawFit, path) -> None:
    with _open_write(path) as fh:
        fh.write(fit_to_json(fit))


def read_fit_json(path) -> PowerLawFit:
    with open(path, encoding="utf-8") as fh:
        return PowerLawFit(**json.load(fh))


def write_report(report: ReproductionReport, out_dir) -> list[Path]:
    """Write every data file of a report; returns the paths in write order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for traj in report.trajectories:
        p = out / trajectory_name(traj.run_id)
        write_trajectory_csv(traj, p)
        paths.append(p)
    p = out / SUMMARY_NAME
    write_summary_csv(report.summary, p)
    paths.append(p)
    for name, fit in ((ALPHA_FIT_NAME, report.alpha_fit), (BETA_FIT_NAME, report.beta_fit)):
        p = out / name
        write_fit_json(fit, p)
        paths.append(p)
    return paths


def write_manifest(config: ExperimentConfig, output_paths, path) -> None:
    manifest = {
        "tool_version": __version__,
        "config": config.to_dict(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "output_paths": [str(p) for p in output_paths],
    }
    with _open_write(path) as fh:
        fh.write(json.dumps(manifest, indent=2) + "\n")


def read_manifest(path) -> tuple[ExperimentConfig, dict]:
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    return ExperimentConfig.from_dict(manifest["config"]), manifest
