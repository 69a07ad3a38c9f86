"""Experiment drivers: steps-to-ground scaling, success rates, best-level
trajectories and the two-spin tunneling sweep.

Each driver turns an :class:`ExperimentConfig` into an
:class:`ExperimentReport`. Work is split into independent per-instance
tasks whose random streams depend only on ``(master_seed, label, index)``,
so results do not depend on ``workers`` or scheduling order.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import __version__
from ..annealers import AdiabaticSchedule, Algorithm, HAParams, SASchedule, run_adiabatic, run_markov
from ..dynamics import tunneling_rate
from ..errors import ParameterError
from ..landscape import TwoSpinParams, generate_rem, level_at_rank, make_quasi_degenerate
from .seeds import instance_seed, run_seed
from .stats import binomial_summary, fit_exponential_base, fit_power_law, summarize

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
EXPERIMENTS = ("table1", "success", "trajectories", "tunneling")
MARKOV_ALGORITHMS = ("HA", "SA", "SA2", "HASA")


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_qubits: tuple = (10,)
    instances: int = 100
    runs_per_instance: int = 1
    master_seed: int = 0
    degenerate: bool = False
    # HA
    steps: int = 200
    beta: float = 10.0
    evolve_time: float = 10.0
    field_min: float = 0.0
    field_max: float = 1.0
    tolerance: float = 1e-8
    # SA schedule
    sa_beta0: float = 1.0
    sa_cooling: float = 0.98
    # AA
    t1: float = 2000.0
    t0: float = 200.0
    aa_field: float = 10.0
    dt: float = 0.1
    skip_aa: bool = False
    # quasi-degenerate variant
    degenerate_k: int = 4
    degenerate_offset: float = 0.001
    # steps-to-ground cap is cap_factor * 2**N
    cap_factor: int = 100
    # tunneling sweep
    barrier: float = 100.0
    tunnel_field: float = 1.0
    delta_min: float = 0.1
    delta_max: float = 100.0
    delta_points: int = 50
    tail_min: float = 10.0
    horizon: float = 1e4
    tunnel_dt: float = 0.05
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        n = self.n_qubits
        n = (n,) if isinstance(n, (int, np.integer)) else tuple(int(x) for x in n)
        object.__setattr__(self, "n_qubits", n)
        if self.instances < 1 or self.runs_per_instance < 1:
            raise ParameterError("instances and runs_per_instance must be >= 1")
        if self.steps < 1:
            raise ParameterError("steps must be >= 1")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")

    def ha_params(self) -> HAParams:
        return HAParams(self.beta, self.evolve_time, self.field_min, self.field_max, self.tolerance)

    def sa_schedule(self) -> SASchedule:
        return SASchedule(beta0=self.sa_beta0, cooling=self.sa_cooling)

    def aa_schedule(self) -> AdiabaticSchedule:
        return AdiabaticSchedule(self.t1, self.t0, self.aa_field, self.dt)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["n_qubits"] = list(self.n_qubits)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    per_instance: list
    aggregates: dict
    fits: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.config.experiment,
            "config": self.config.to_dict(),
            "aggregates": self.aggregates,
            "fits": {k: v.to_dict() for k, v in self.fits.items()},
            "curves": self.curves,
            "per_instance": self.per_instance,
            "metadata": self.metadata,
        }

    def recompute_aggregates(self) -> dict:
        return AGGREGATORS[self.config.experiment](self.config, self.per_instance)


def _pool_map(fn, tasks, workers):
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def _landscape(cfg: ExperimentConfig, n: int, index: int):
    seed = instance_seed(cfg.master_seed, n, index)
    land = generate_rem(n, seed)
    if cfg.degenerate:
        land = make_quasi_degenerate(land, cfg.degenerate_k, cfg.degenerate_offset)
    return seed, land


def _metadata(t_start: float) -> dict:
    return {
        "package_version": __version__,
        "wall_seconds": round(time.perf_counter() - t_start, 3),
        "python": platform.python_version(),
        "numpy": np.__version__,
    }


# --- table1 ------------------------------------------------------------------

def _table1_task(args):
    cfg, n, i = args
    seed, land = _landscape(cfg, n, i)
    rs = run_seed(cfg.master_seed, "HA", n, i, 0)
    cap = cfg.cap_factor * (1 << n)
    start = level_at_rank(land, 1 << (n - 1))
    traj = run_markov(Algorithm.HA, land, start, cap, cfg.ha_params(), rs, stop_at_ground=True)
    hit = traj.reached_ground_at
    return {
        "n_qubits": n,
        "instance": i,
        "instance_seed": seed,
        "run_seed": rs,
        "steps": hit,
        "capped": hit is None,
    }


def _table1_aggregate(cfg, rows):
    agg = {}
    for n in cfg.n_qubits:
        mine = [r for r in rows if r["n_qubits"] == n]
        ok = [r["steps"] for r in mine if not r["capped"]]
        s = summarize(ok)
        s["excluded"] = len(mine) - len(ok)
        agg[str(n)] = s
    return agg


def _table1_fits(cfg, agg):
    ns = [n for n in cfg.n_qubits if agg[str(n)]["n"] > 0]
    if len(ns) < 3:
        return {}
    return {
        "mean": fit_exponential_base([(n, agg[str(n)]["mean"]) for n in ns]),
        "median": fit_exponential_base([(n, agg[str(n)]["median"]) for n in ns]),
    }


def experiment_table1(cfg: ExperimentConfig) -> ExperimentReport:
    """HA steps needed to reach rank 1 from rank 2**(N-1), per qubit count."""
    t0 = time.perf_counter()
    tasks = [(cfg, n, i) for n in cfg.n_qubits for i in range(cfg.instances)]
    rows = sorted(_pool_map(_table1_task, tasks, cfg.workers),
                  key=lambda r: (r["n_qubits"], r["instance"]))
    agg = _table1_aggregate(cfg, rows)
    for n in cfg.n_qubits:
        if agg[str(n)]["excluded"]:
            log.warning("N=%d: %d instance(s) hit the step cap and were excluded",
                        n, agg[str(n)]["excluded"])
    return ExperimentReport(cfg, rows, agg, _table1_fits(cfg, agg), metadata=_metadata(t0))


# --- success -----------------------------------------------------------------

def _success_task(args):
    cfg, n, i = args
    seed, land = _landscape(cfg, n, i)
    p_aa = None if cfg.skip_aa else run_adiabatic(land, cfg.aa_schedule())
    start = level_at_rank(land, 1 << (n - 1))
    hits = 0
    seeds = []
    for r in range(cfg.runs_per_instance):
        rs = run_seed(cfg.master_seed, "HA", n, i, r)
        seeds.append(rs)
        traj = run_markov(Algorithm.HA, land, start, cfg.steps, cfg.ha_params(), rs,
                          stop_at_ground=True)
        hits += traj.reached_ground_at is not None
    return {
        "n_qubits": n,
        "instance": i,
        "instance_seed": seed,
        "p_aa": p_aa,
        "ha_successes": hits,
        "ha_runs": cfg.runs_per_instance,
        "run_seeds": seeds,
    }


def _success_aggregate(cfg, rows):
    agg = {}
    for n in cfg.n_qubits:
        mine = [r for r in rows if r["n_qubits"] == n]
        p_aa = [r["p_aa"] for r in mine if r["p_aa"] is not None]
        agg[str(n)] = {
            "p_aa": summarize(p_aa),
            "p_ha": binomial_summary(sum(r["ha_successes"] for r in mine),
                                     sum(r["ha_runs"] for r in mine)),
        }
    return agg


def experiment_success(cfg: ExperimentConfig) -> ExperimentReport:
    """Adiabatic overlap and fixed-budget HA success rate on shared instances."""
    t0 = time.perf_counter()
    tasks = [(cfg, n, i) for n in cfg.n_qubits for i in range(cfg.instances)]
    rows = sorted(_pool_map(_success_task, tasks, cfg.workers),
                  key=lambda r: (r["n_qubits"], r["instance"]))
    return ExperimentReport(cfg, rows, _success_aggregate(cfg, rows), metadata=_metadata(t0))


# --- trajectories ------------------------------------------------------------

def _trajectory_task(args):
    cfg, n, i = args
    seed, land = _landscape(cfg, n, i)
    start = level_at_rank(land, 1 << (n - 1))
    row = {"n_qubits": n, "instance": i, "instance_seed": seed, "best_rank": {}}
    for alg in MARKOV_ALGORITHMS:
        params = cfg.sa_schedule() if alg in ("SA", "SA2") else cfg.ha_params()
        rs = run_seed(cfg.master_seed, alg, n, i, 0)
        traj = run_markov(alg, land, start, cfg.steps, params, rs)
        row["best_rank"][alg] = traj.best_ranks().tolist()
    return row


def _trajectory_aggregate(cfg, rows):
    agg = {}
    for alg in MARKOV_ALGORITHMS:
        curves = np.array([r["best_rank"][alg] for r in rows], dtype=float)
        mean = curves.mean(axis=0)
        agg[alg] = {
            "mean_curve": mean.tolist(),
            "final": summarize(curves[:, -1]),
        }
    return agg


def experiment_trajectories(cfg: ExperimentConfig) -> ExperimentReport:
    """Instance-averaged best rank per step for HA, SA, SA2 and HA+SA."""
    t0 = time.perf_counter()
    n = cfg.n_qubits[0]
    tasks = [(cfg, n, i) for i in range(cfg.instances)]
    rows = sorted(_pool_map(_trajectory_task, tasks, cfg.workers), key=lambda r: r["instance"])
    agg = _trajectory_aggregate(cfg, rows)
    curves = {"step": list(range(1, cfg.steps + 1))}
    curves.update({alg: agg[alg]["mean_curve"] for alg in MARKOV_ALGORITHMS})
    return ExperimentReport(cfg, rows, agg, curves=curves, metadata=_metadata(t0))


# --- tunneling ---------------------------------------------------------------

def delta_grid(cfg: ExperimentConfig) -> np.ndarray:
    """Detunings swept: zero followed by a log-spaced grid."""
    grid = np.logspace(math.log10(cfg.delta_min), math.log10(cfg.delta_max), cfg.delta_points)
    return np.concatenate([[0.0], grid])


def _tunneling_task(args):
    cfg, delta = args
    p = TwoSpinParams(float(delta), cfg.barrier, cfg.tunnel_field)
    t = tunneling_rate(p, cfg.horizon, cfg.tunnel_dt)
    t2 = tunneling_rate(p, 2 * cfg.horizon, cfg.tunnel_dt)
    return {"delta": float(delta), "T": t, "T_doubled": t2,
            "relative_change": abs(t2 - t) / t if t > 0 else 0.0}


def _tunneling_aggregate(cfg, rows):
    tail = [r for r in rows if r["delta"] >= cfg.tail_min]
    ts = [r["T"] for r in rows]
    return {
        "max_T_delta": rows[int(np.argmax(ts))]["delta"],
        "max_relative_change": max(r["relative_change"] for r in rows),
        "tail_points": len(tail),
    }


def experiment_tunneling(cfg: ExperimentConfig) -> ExperimentReport:
    """Time-averaged tunneling p(t) against detuning, with a tail power-law fit."""
    t0 = time.perf_counter()
    tasks = [(cfg, d) for d in delta_grid(cfg)]
    rows = _pool_map(_tunneling_task, tasks, cfg.workers)
    agg = _tunneling_aggregate(cfg, rows)
    tail = [r for r in rows if r["delta"] >= cfg.tail_min]
    fits = {"tail": fit_power_law([r["delta"] for r in tail], [r["T"] for r in tail])}
    curves = {k: [r[k] for r in rows] for k in ("delta", "T", "T_doubled")}
    return ExperimentReport(cfg, rows, agg, fits, curves, _metadata(t0))


AGGREGATORS = {
    "table1": _table1_aggregate,
    "success": _success_aggregate,
    "trajectories": _trajectory_aggregate,
    "tunneling": _tunneling_aggregate,
}

DRIVERS = {
    "table1": experiment_table1,
    "success": experiment_success,
    "trajectories": experiment_trajectories,
    "tunneling": experiment_tunneling,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return DRIVERS[cfg.experiment](cfg)
