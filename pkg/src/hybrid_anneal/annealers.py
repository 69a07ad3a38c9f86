"""Annealing strategies as step functions plus a shared run loop.

Every step function takes an explicit ``numpy.random.Generator`` and draws
from it in a fixed order, so a trajectory replays exactly from its seed:

* HA:    field ``B`` (uniform), measurement (uniform), acceptance (uniform)
* SA:    spin index (integer), acceptance
* SA2:   spin index, spin index, acceptance
* HA+SA: field, measurement, spin index, acceptance

Step indices are 1-based; ``reached_ground_at == 0`` means the run started
in the ground state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import dynamics
from .dynamics import AdiabaticSchedule
from .errors import ParameterError
from .landscape import Configuration, Landscape


class Algorithm(str, enum.Enum):
    HA = "HA"
    SA = "SA"
    SA2 = "SA2"
    HASA = "HASA"
    AA = "AA"


@dataclass(frozen=True)
class HAParams:
    beta: float = 10.0
    evolve_time: float = 10.0
    field_min: float = 0.0
    field_max: float = 1.0
    tolerance: float = 1e-8

    def __post_init__(self):
        if not 0 <= self.field_min <= self.field_max:
            raise ParameterError("need 0 <= field_min <= field_max")
        if self.beta <= 0 or self.evolve_time <= 0:
            raise ParameterError("beta and evolve_time must be positive")
        if not 0 < self.tolerance <= 1e-4:
            raise ParameterError("tolerance must lie in (0, 1e-4]")


@dataclass(frozen=True)
class SASchedule:
    beta0: float = 1.0
    cooling: float = 0.98
    success_quota: int = 10
    step_cap: int = 20

    def __post_init__(self):
        if not 0 < self.cooling < 1:
            raise ParameterError("cooling must lie in (0, 1)")
        if self.beta0 <= 0:
            raise ParameterError("beta0 must be positive")
        if self.success_quota < 1 or self.step_cap < 1:
            raise ParameterError("quotas must be positive")


@dataclass(frozen=True)
class ScheduleCounters:
    k: int = 0
    accepted: int = 0
    steps: int = 0


@dataclass(frozen=True)
class StepRecord:
    step_index: int
    config: Configuration
    energy: float
    accepted: bool
    best_rank_so_far: int
    candidate: Configuration | None = None
    branch: str | None = None


@dataclass
class Trajectory:
    algorithm: Algorithm
    start: Configuration
    records: list = field(default_factory=list)
    reached_ground_at: int | None = None
    seed: int | None = None

    def best_ranks(self) -> np.ndarray:
        return np.array([r.best_rank_so_far for r in self.records], dtype=np.int64)

    @property
    def final(self) -> Configuration:
        return self.records[-1].config if self.records else self.start


def metropolis_accept(delta_e: float, beta: float, rng: np.random.Generator) -> bool:
    """Accept with probability ``min(exp(-beta * delta_e), 1)``.

    One uniform is drawn on every call, downhill moves included.
    """
    if beta < 0:
        raise ParameterError(f"beta must be >= 0, got {beta}")
    u = rng.random()
    x = beta * delta_e
    if x <= 0:
        return True
    return u < math.exp(-x)


def sa_schedule_beta(schedule: SASchedule, k: int) -> float:
    if k < 0:
        raise ParameterError("k must be >= 0")
    return schedule.beta0 * schedule.cooling ** (-k)


def advance_schedule(
    counters: ScheduleCounters, accepted: bool, schedule: SASchedule = SASchedule()
) -> ScheduleCounters:
    n_acc = counters.accepted + int(accepted)
    n_steps = counters.steps + 1
    if n_acc >= schedule.success_quota or n_steps >= schedule.step_cap:
        return ScheduleCounters(counters.k + 1, 0, 0)
    return ScheduleCounters(counters.k, n_acc, n_steps)


# --- candidate generators ----------------------------------------------------

def _ha_candidate(bits: int, landscape: Landscape, params: HAParams, rng) -> int:
    b = rng.uniform(params.field_min, params.field_max)
    n = landscape.n_qubits
    if b == 0.0:
        # diagonal evolution keeps a basis state; the measurement draw is still consumed
        rng.random()
        return bits
    psi = np.zeros(landscape.dim, dtype=np.complex128)
    psi[bits] = 1.0
    out, _ = dynamics.propagate(
        landscape.energies, n, b, psi, params.evolve_time, params.tolerance
    )
    state = dynamics.StateVector(out, n)
    return dynamics.measure(state, rng).bits


def _flip_candidate(bits: int, n_qubits: int, rng) -> int:
    return bits ^ (1 << int(rng.integers(n_qubits)))


def _finish(step_index, current, cand, landscape, beta, rng, best_rank, branch=None):
    e = landscape.energies
    accepted = metropolis_accept(float(e[cand] - e[current]), beta, rng)
    new = cand if accepted else current
    n = landscape.n_qubits
    rank_new = int(landscape.rank_of[new])
    if best_rank is None:
        best_rank = int(landscape.rank_of[current])
    return StepRecord(
        step_index,
        Configuration(new, n),
        float(e[new]),
        accepted,
        min(best_rank, rank_new),
        Configuration(cand, n),
        branch,
    )


# --- step functions ----------------------------------------------------------

def ha_step(current: Configuration, landscape: Landscape, params: HAParams, rng,
            *, step_index: int = 1, best_rank: int | None = None) -> StepRecord:
    """Evolve ``current`` in a random transverse field, measure, Metropolis-accept."""
    cand = _ha_candidate(current.bits, landscape, params, rng)
    return _finish(step_index, current.bits, cand, landscape, params.beta, rng, best_rank)


def sa_step(current: Configuration, landscape: Landscape, beta: float, rng,
            *, step_index: int = 1, best_rank: int | None = None) -> StepRecord:
    cand = _flip_candidate(current.bits, landscape.n_qubits, rng)
    return _finish(step_index, current.bits, cand, landscape, beta, rng, best_rank)


def sa2_step(current: Configuration, landscape: Landscape, beta: float, rng,
             *, step_index: int = 1, best_rank: int | None = None) -> StepRecord:
    """Best of two independent single flips (which may coincide)."""
    c1 = _flip_candidate(current.bits, landscape.n_qubits, rng)
    c2 = _flip_candidate(current.bits, landscape.n_qubits, rng)
    cand = c2 if landscape.energies[c2] < landscape.energies[c1] else c1
    return _finish(step_index, current.bits, cand, landscape, beta, rng, best_rank)


def hasa_step(current: Configuration, landscape: Landscape, ha: HAParams,
              beta_sa: float | None = None, rng=None,
              *, step_index: int = 1, best_rank: int | None = None) -> StepRecord:
    """Lower-energy of one HA and one single-flip candidate, then Metropolis.

    Acceptance runs at ``beta_sa`` when given, otherwise at ``ha.beta``.
    Equal energies favour the HA candidate.
    """
    c_ha = _ha_candidate(current.bits, landscape, ha, rng)
    c_sa = _flip_candidate(current.bits, landscape.n_qubits, rng)
    e = landscape.energies
    if e[c_sa] < e[c_ha]:
        cand, branch = c_sa, "SA"
    else:
        cand, branch = c_ha, "HA"
    beta = ha.beta if beta_sa is None else beta_sa
    return _finish(step_index, current.bits, cand, landscape, beta, rng, best_rank, branch)


# --- run loops ---------------------------------------------------------------

def run_markov(algorithm, landscape: Landscape, start: Configuration, max_steps: int,
               params=None, rng=None, *, stop_at_ground: bool = False) -> Trajectory:
    """Iterate one step function for up to ``max_steps`` steps.

    ``params`` is an :class:`HAParams` for HA and HA+SA, an
    :class:`SASchedule` for SA and SA2 (defaults apply when None). ``rng``
    may be a Generator or an integer seed.
    """
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.AA:
        raise ParameterError("AA is not a Markov algorithm; use run_adiabatic")
    if max_steps < 1:
        raise ParameterError("max_steps must be >= 1")
    seed = None
    if rng is None or isinstance(rng, (int, np.integer)):
        seed = None if rng is None else int(rng)
        rng = np.random.default_rng(seed)
    if params is None:
        params = SASchedule() if algorithm in (Algorithm.SA, Algorithm.SA2) else HAParams()

    traj = Trajectory(algorithm, start, seed=seed)
    best = landscape.rank(start)
    if best == 1:
        traj.reached_ground_at = 0
        if stop_at_ground:
            return traj
    current = start
    counters = ScheduleCounters()
    for i in range(1, max_steps + 1):
        if algorithm is Algorithm.HA:
            rec = ha_step(current, landscape, params, rng, step_index=i, best_rank=best)
        elif algorithm is Algorithm.HASA:
            rec = hasa_step(current, landscape, params, None, rng, step_index=i, best_rank=best)
        else:
            beta = sa_schedule_beta(params, counters.k)
            step = sa_step if algorithm is Algorithm.SA else sa2_step
            rec = step(current, landscape, beta, rng, step_index=i, best_rank=best)
            counters = advance_schedule(counters, rec.accepted, params)
        traj.records.append(rec)
        current = rec.config
        best = rec.best_rank_so_far
        if best == 1 and traj.reached_ground_at is None:
            traj.reached_ground_at = i
            if stop_at_ground:
                break
    return traj


def run_adiabatic(landscape: Landscape, schedule: AdiabaticSchedule = AdiabaticSchedule()) -> float:
    """Squared overlap of the annealed state with the rank-1 configuration."""
    state = dynamics.evolve_adiabatic(landscape, schedule)
    return dynamics.overlap_sq(state, landscape.ground())
