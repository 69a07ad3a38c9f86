"""Statevector dynamics under ``H = H0 + B * sum_i sigma_x^(i)``.

Units: hbar = 1, energies in eps, times in tau = hbar/eps. Propagation uses
``exp(-i H t)``. The constant-H propagator is a restarted Lanczos
approximation (matrix-free, ``O(N 2^N)`` per Krylov vector); a dense
eigendecomposition backend for N <= 8 is kept alongside as a reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    ConvergenceError,
    DimensionError,
    NormalizationError,
    ParameterError,
)
from .landscape import Configuration, Landscape, TwoSpinParams, two_spin_landscape

KRYLOV_DIM = 40
DEFAULT_TOLERANCE = 1e-10
DENSE_MAX_QUBITS = 8


@dataclass
class StateVector:
    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise DimensionError(
                f"expected {1 << self.n_qubits} amplitudes, got {self.amplitudes.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class EvolveParams:
    field: float
    time: float
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.field < 0:
            raise ParameterError(f"field must be >= 0, got {self.field}")
        if self.time < 0:
            raise ParameterError(f"time must be >= 0, got {self.time}")
        if not 0 < self.tolerance <= 1e-4:
            raise ParameterError(f"tolerance must lie in (0, 1e-4], got {self.tolerance}")


@dataclass(frozen=True)
class AdiabaticSchedule:
    """Field ``B * exp(-t / decay_time)`` switched off over ``[0, total_time]``.

    ``total_time == 0`` is accepted and means no evolution at all.
    """

    total_time: float = 2000.0
    decay_time: float = 200.0
    field: float = 10.0
    step: float = 0.1
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.total_time < 0:
            raise ParameterError(f"total_time must be >= 0, got {self.total_time}")
        if not (self.decay_time > 0 and self.field > 0 and self.step > 0):
            raise ParameterError("decay_time, field and step must be positive")
        if self.total_time > 0 and not self.decay_time < self.total_time:
            raise ParameterError("decay_time must be shorter than total_time")
        if self.step > self.decay_time / 10 * (1 + 1e-12):
            raise ParameterError(
                f"step {self.step} does not resolve decay_time {self.decay_time} "
                "(need step <= decay_time / 10)"
            )
        if not 0 < self.tolerance <= 1e-4:
            raise ParameterError(f"tolerance must lie in (0, 1e-4], got {self.tolerance}")

    def field_at(self, t: float) -> float:
        return self.field * math.exp(-t / self.decay_time)


def _check_dims(landscape: Landscape, n_qubits: int):
    if landscape.n_qubits != n_qubits:
        raise DimensionError(
            f"state has {n_qubits} qubits, landscape {landscape.n_qubits}"
        )


def basis_state(config: Configuration) -> StateVector:
    amps = np.zeros(1 << config.n_qubits, dtype=np.complex128)
    amps[config.bits] = 1.0
    return StateVector(amps, config.n_qubits)


def transverse_ground_state(n_qubits: int) -> StateVector:
    """Ground state of ``+B sum_i sigma_x^(i)`` for B > 0 (all spins along -x)."""
    idx = np.arange(1 << n_qubits)
    parity = np.zeros(idx.size, dtype=np.int64)
    for i in range(n_qubits):
        parity ^= (idx >> i) & 1
    amps = np.where(parity == 1, -1.0, 1.0) * 2.0 ** (-n_qubits / 2)
    return StateVector(amps.astype(np.complex128), n_qubits)


def apply_hamiltonian(landscape: Landscape, field: float, state: StateVector) -> StateVector:
    _check_dims(landscape, state.n_qubits)
    out = np.empty_like(state.amplitudes)
    _kernels.hamiltonian_matvec(
        landscape.energies, float(field), state.n_qubits, state.amplitudes, out
    )
    return StateVector(out, state.n_qubits)


def expectation(landscape: Landscape, field: float, state: StateVector) -> float:
    """<psi|H|psi> for the constant Hamiltonian."""
    h_psi = apply_hamiltonian(landscape, field, state).amplitudes
    return float(np.vdot(state.amplitudes, h_psi).real)


def propagate(energies, n_qubits, field, amplitudes, time, tolerance=DEFAULT_TOLERANCE):
    """Array-level propagator: ``(exp(-i H time) amplitudes, drift)``.

    ``drift`` is ``| ||out|| - 1 |`` before the output is renormalized.
    Negative ``time`` propagates backwards.
    """
    out, _, err, ok = _kernels.krylov_propagate(
        energies, float(field), n_qubits, amplitudes, float(time), float(tolerance),
        KRYLOV_DIM,
    )
    if not ok:
        raise ConvergenceError("Krylov propagator could not meet tolerance", err)
    nrm = float(np.sqrt(np.vdot(out, out).real))
    out /= nrm
    return out, abs(nrm - 1.0)


def evolve(landscape: Landscape, params: EvolveParams, state: StateVector) -> StateVector:
    """``exp(-i H t)|state>`` with ``H = H0 + B sum_i sigma_x^(i)``."""
    _check_dims(landscape, state.n_qubits)
    if params.time == 0:
        return StateVector(state.amplitudes.copy(), state.n_qubits)
    out, _ = propagate(
        landscape.energies, state.n_qubits, params.field, state.amplitudes,
        params.time, params.tolerance,
    )
    return StateVector(out, state.n_qubits)


@dataclass(frozen=True)
class AdiabaticInfo:
    n_steps: int
    max_step_drift: float
    total_drift: float


def integrate_schedule(landscape: Landscape, schedule: AdiabaticSchedule):
    """Run the annealing schedule and return ``(state, AdiabaticInfo)``.

    The Hamiltonian is held constant over each step at the field value of
    the step midpoint; each step uses the Krylov propagator.
    """
    n = landscape.n_qubits
    psi0 = transverse_ground_state(n).amplitudes
    psi, max_drift, total, n_steps, ok, err = _kernels.adiabatic_integrate(
        landscape.energies, n, psi0, float(schedule.total_time), float(schedule.step),
        float(schedule.field), float(schedule.decay_time), float(schedule.tolerance),
        KRYLOV_DIM,
    )
    if not ok:
        raise ConvergenceError(f"Krylov propagator failed at adiabatic step {n_steps}", err)
    return StateVector(psi, n), AdiabaticInfo(int(n_steps), float(max_drift), float(total))


def evolve_adiabatic(landscape: Landscape, schedule: AdiabaticSchedule) -> StateVector:
    return integrate_schedule(landscape, schedule)[0]


def measure(state: StateVector, rng: np.random.Generator) -> Configuration:
    """Born-rule projective measurement in the computational basis.

    Draws exactly one ``rng.random()`` and inverts the cumulative
    distribution.
    """
    p = state.probabilities()
    cdf = np.cumsum(p)
    total = cdf[-1]
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(f"state norm^2 is {total:.9f}, expected 1")
    u = rng.random()
    idx = int(np.searchsorted(cdf, u * total, side="right"))
    return Configuration(min(idx, cdf.size - 1), state.n_qubits)


def overlap_sq(state: StateVector, config: Configuration) -> float:
    if config.n_qubits != state.n_qubits:
        raise DimensionError("configuration and state differ in qubit count")
    a = state.amplitudes[config.bits]
    return float(a.real * a.real + a.imag * a.imag)


# --- dense reference backend -------------------------------------------------

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def dense_hamiltonian(landscape: Landscape, field: float) -> np.ndarray:
    """Explicit 2^N x 2^N Hamiltonian built from Kronecker products (N <= 8)."""
    n = landscape.n_qubits
    if n > DENSE_MAX_QUBITS:
        raise ParameterError(f"dense backend limited to {DENSE_MAX_QUBITS} qubits")
    h = np.diag(landscape.energies).astype(np.float64)
    for i in range(n):
        # qubit i is bit i of the index, i.e. the i-th factor from the right
        op = np.array([[1.0]])
        for j in reversed(range(n)):
            op = np.kron(op, _SIGMA_X if j == i else np.eye(2))
        h += field * op
    return h


def dense_evolve(landscape: Landscape, field: float, time: float, amplitudes) -> np.ndarray:
    lam, vecs = np.linalg.eigh(dense_hamiltonian(landscape, field))
    return vecs @ (np.exp(-1j * lam * time) * (vecs.conj().T @ amplitudes))


# --- two-spin tunneling ------------------------------------------------------

DOWN_DOWN = 0
UP_UP = 3


def tunneling_amplitude(params: TwoSpinParams, times) -> np.ndarray:
    """p(t) = |<dd| exp(-iHt) |uu>| on the two-spin landscape."""
    ham = dense_hamiltonian(two_spin_landscape(params), params.field)
    lam, vecs = np.linalg.eigh(ham)
    weights = vecs[DOWN_DOWN] * vecs[UP_UP]
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), lam))
    return np.abs(phases @ weights)


def tunneling_rate(params: TwoSpinParams, horizon: float = 1e4, dt: float = 0.05) -> float:
    """Time average of p(t) over ``[0, horizon]`` by the trapezoid rule."""
    if horizon < 1000:
        raise ParameterError(f"horizon must be >= 1000, got {horizon}")
    if not 0 < dt <= 0.1:
        raise ParameterError(f"dt must lie in (0, 0.1], got {dt}")
    n = int(round(horizon / dt))
    times = np.linspace(0.0, horizon, n + 1)
    # chunked to bound memory at long horizons
    total = 0.0
    chunk = 200_000
    prev = None
    for start in range(0, times.size, chunk):
        seg = times[start : start + chunk]
        p = tunneling_amplitude(params, seg)
        if prev is not None:
            total += 0.5 * (prev[1] + p[0]) * (seg[0] - prev[0])
        total += np.trapezoid(p, seg) if hasattr(np, "trapezoid") else np.trapz(p, seg)
        prev = (seg[-1], p[-1])
    return float(total / horizon)
