"""A scaled-down steps-to-ground table, written to CSV and JSON."""

import tempfile
from pathlib import Path

from hybrid_anneal.harness import ExperimentConfig, read_sidecar, run_experiment, write_report

cfg = ExperimentConfig("table1", n_qubits=(6, 7, 8), instances=20, master_seed=1)
report = run_experiment(cfg)

for n, agg in report.aggregates.items():
    print(f"N={n}: mean {agg['mean']:.0f} median {agg['median']:.0f} steps")
fit = report.fits["median"]
print(f"median grows like b^N with b = {fit.base_or_slope:.2f} +- {fit.uncertainty:.2f}")

# %% files land next to each other; the sidecar carries every seed and parameter
csv_path, json_path = write_report(report, Path(tempfile.mkdtemp()) / "table1")
side = read_sidecar(json_path)
print(csv_path.name, json_path.name, "schema", side["schema_version"])
print(csv_path.read_text().splitlines()[0])
