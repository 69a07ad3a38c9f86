"""CSV tables and JSON sidecars for experiment reports.

CSV columns per experiment:

* ``table1``: n_qubits, instances, excluded, mean_steps, median_steps, sem_steps
* ``success``: n_qubits, instance, instance_seed, p_aa, ha_successes, ha_runs
* ``trajectories``: step, HA, SA, SA2, HASA (instance-averaged best rank)
* ``tunneling``: delta, T, T_doubled

The sidecar holds :meth:`ExperimentReport.to_dict` and carries
``schema_version``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .experiments import MARKOV_ALGORITHMS, ExperimentReport


def output_paths(out: str | Path) -> tuple[Path, Path]:
    p = Path(out)
    stem = p.with_suffix("") if p.suffix in (".csv", ".json") else p
    return stem.with_suffix(".csv"), stem.with_suffix(".json")


def csv_rows(report: ExperimentReport) -> tuple[list, list]:
    exp = report.config.experiment
    if exp == "table1":
        header = ["n_qubits", "instances", "excluded", "mean_steps", "median_steps", "sem_steps"]
        rows = []
        for n in report.config.n_qubits:
            a = report.aggregates[str(n)]
            rows.append([n, a["n"] + a["excluded"], a["excluded"], a["mean"], a["median"], a["sem"]])
        return header, rows
    if exp == "success":
        header = ["n_qubits", "instance", "instance_seed", "p_aa", "ha_successes", "ha_runs"]
        return header, [[r[k] for k in header] for r in report.per_instance]
    if exp == "trajectories":
        header = ["step", *MARKOV_ALGORITHMS]
        c = report.curves
        return header, [list(row) for row in zip(c["step"], *(c[a] for a in MARKOV_ALGORITHMS))]
    header = ["delta", "T", "T_doubled"]
    return header, [[r[k] for k in header] for r in report.per_instance]


def write_report(report: ExperimentReport, out: str | Path) -> tuple[Path, Path]:
    csv_path, json_path = output_paths(out)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    header, rows = csv_rows(report)
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    with open(json_path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=1)
    return csv_path, json_path


def read_sidecar(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)
