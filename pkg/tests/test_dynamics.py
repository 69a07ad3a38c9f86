import numpy as np
import pytest
import scipy.linalg
from scipy import stats

from conftest import dense_reference_hamiltonian, random_state
from hybrid_anneal.dynamics import (
    AdiabaticSchedule,
    EvolveParams,
    StateVector,
    apply_hamiltonian,
    basis_state,
    dense_evolve,
    dense_hamiltonian,
    evolve,
    evolve_adiabatic,
    expectation,
    integrate_schedule,
    measure,
    overlap_sq,
    transverse_ground_state,
    tunneling_amplitude,
    tunneling_rate,
)
from hybrid_anneal.errors import (
    ConvergenceError,
    DimensionError,
    NormalizationError,
    ParameterError,
)
from hybrid_anneal.landscape import (
    Configuration,
    Landscape,
    TwoSpinParams,
    generate_rem,
    level_at_rank,
    two_spin_landscape,
)


def flat(n):
    return Landscape(n, np.zeros(1 << n))


# --- state preparation -------------------------------------------------------

def test_basis_state():
    s = basis_state(Configuration(0, 2))
    assert s.amplitudes.tolist() == [1, 0, 0, 0]
    assert s.norm() == 1.0
    assert measure(s, np.random.default_rng(0)).bits == 0


def test_transverse_ground_state_single_qubit():
    s = transverse_ground_state(1)
    assert np.allclose(s.amplitudes, [2**-0.5, -(2**-0.5)])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_transverse_ground_state_is_eigenstate(n):
    s = transverse_ground_state(n)
    assert abs(s.norm() - 1) < 1e-15
    h_s = apply_hamiltonian(flat(n), 1.0, s)
    assert np.allclose(h_s.amplitudes, -n * s.amplitudes, atol=1e-14)


def test_transverse_ground_state_is_lowest_level():
    lam, vecs = np.linalg.eigh(dense_reference_hamiltonian(np.zeros(16), 1.0, 4))
    s = transverse_ground_state(4).amplitudes
    assert abs(abs(np.vdot(vecs[:, 0], s)) - 1) < 1e-12


# --- Hamiltonian application -------------------------------------------------

def test_apply_hamiltonian_without_field_is_diagonal(rng):
    land = generate_rem(4, 1)
    v = random_state(rng, 4)
    out = apply_hamiltonian(land, 0.0, StateVector(v, 4)).amplitudes
    assert np.allclose(out, land.energies * v, atol=0)


def test_apply_hamiltonian_flips_single_spin():
    out = apply_hamiltonian(flat(1), 1.0, StateVector([1, 0], 1)).amplitudes
    assert np.array_equal(out, [0, 1])


@pytest.mark.parametrize("seed", range(3))
def test_apply_hamiltonian_matches_dense(rng, seed):
    land = generate_rem(5, seed)
    v = random_state(rng, 5)
    h = dense_reference_hamiltonian(land.energies, 0.37, 5)
    out = apply_hamiltonian(land, 0.37, StateVector(v, 5)).amplitudes
    assert np.linalg.norm(out - h @ v) < 1e-12


def test_kron_dense_backend_matches_reference():
    land = generate_rem(4, 8)
    assert np.allclose(dense_hamiltonian(land, 0.6), dense_reference_hamiltonian(land.energies, 0.6, 4))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_hamiltonian(generate_rem(3, 0), 1.0, transverse_ground_state(4))


# --- constant-H propagation --------------------------------------------------

def test_evolve_zero_time_is_identity(rng):
    v = random_state(rng, 4)
    out = evolve(generate_rem(4, 0), EvolveParams(0.5, 0.0), StateVector(v, 4))
    assert np.array_equal(out.amplitudes, v)


def test_evolve_without_field_only_rotates_phases(rng):
    v = random_state(rng, 5)
    out = evolve(generate_rem(5, 2), EvolveParams(0.0, 7.3), StateVector(v, 5))
    assert np.allclose(np.abs(out.amplitudes), np.abs(v), atol=1e-12)


@pytest.mark.parametrize("t", [0.3, 1.0, 2.5, 10.0, 37.0])
def test_rabi_rotation(t):
    out = evolve(flat(1), EvolveParams(1.0, t), StateVector([1, 0], 1)).amplitudes
    assert np.allclose(out, [np.cos(t), -1j * np.sin(t)], atol=1e-12)


@pytest.mark.parametrize("n,seed", [(2, 0), (4, 1), (6, 2)])
def test_evolve_matches_dense_expm(rng, n, seed):
    land = generate_rem(n, seed)
    v = random_state(rng, n)
    h = dense_reference_hamiltonian(land.energies, 0.7, n)
    expected = scipy.linalg.expm(-1j * 10.0 * h) @ v
    out = evolve(land, EvolveParams(0.7, 10.0), StateVector(v, n)).amplitudes
    assert np.linalg.norm(out - expected) < 1e-8


def test_dense_evolve_matches_expm(rng):
    land = generate_rem(3, 4)
    v = random_state(rng, 3)
    h = dense_reference_hamiltonian(land.energies, 0.2, 3)
    assert np.allclose(dense_evolve(land, 0.2, 3.0, v), scipy.linalg.expm(-3j * h) @ v, atol=1e-12)


def test_unitarity_and_energy_conservation(rng):
    land = generate_rem(8, 6)
    s = StateVector(random_state(rng, 8), 8)
    e0 = expectation(land, 0.8, s)
    out = evolve(land, EvolveParams(0.8, 25.0), s)
    assert abs(out.norm() - 1) <= 1e-9
    assert abs(expectation(land, 0.8, out) - e0) <= 1e-7


def test_reversibility(rng):
    land = generate_rem(7, 3)
    v = random_state(rng, 7)
    fwd = evolve(land, EvolveParams(0.9, 10.0), StateVector(v, 7))
    # exp(+iHt) = conj(exp(-iHt) conj(.)) for real symmetric H
    back = evolve(land, EvolveParams(0.9, 10.0), StateVector(fwd.amplitudes.conj(), 7))
    assert np.linalg.norm(back.amplitudes.conj() - v) < 1e-7


def test_unreachable_tolerance_raises():
    land = generate_rem(3, 0)
    with pytest.raises(ConvergenceError) as info:
        evolve(land, EvolveParams(1.0, 50.0, tolerance=1e-300), basis_state(Configuration(0, 3)))
    assert info.value.residual >= 0


def test_evolve_params_validation():
    with pytest.raises(ParameterError):
        EvolveParams(1.0, 1.0, tolerance=1e-3)
    with pytest.raises(ParameterError):
        EvolveParams(-1.0, 1.0)


# --- adiabatic schedule ------------------------------------------------------

def test_adiabatic_on_flat_landscape_keeps_initial_state():
    sched = AdiabaticSchedule(total_time=50.0, decay_time=5.0, field=10.0, step=0.1)
    out = evolve_adiabatic(flat(4), sched).amplitudes
    ref = transverse_ground_state(4).amplitudes
    assert abs(abs(np.vdot(ref, out)) - 1) < 1e-9


def test_adiabatic_zero_time_is_initial_state():
    land = generate_rem(5, 0)
    out = evolve_adiabatic(land, AdiabaticSchedule(total_time=0.0))
    assert np.array_equal(out.amplitudes, transverse_ground_state(5).amplitudes)


def test_adiabatic_matches_dense_piecewise_oracle():
    land = generate_rem(4, 12)
    sched = AdiabaticSchedule(total_time=30.0, decay_time=3.0, field=10.0, step=0.25)
    psi = transverse_ground_state(4).amplitudes
    for k in range(120):
        b = 10.0 * np.exp(-(k + 0.5) * 0.25 / 3.0)
        h = dense_reference_hamiltonian(land.energies, b, 4)
        psi = scipy.linalg.expm(-0.25j * h) @ psi
    out = evolve_adiabatic(land, sched).amplitudes
    assert np.linalg.norm(out - psi) < 1e-7


def test_adiabatic_self_convergence_and_drift():
    land = generate_rem(8, 31)
    coarse, info = integrate_schedule(land, AdiabaticSchedule(step=0.1))
    fine, _ = integrate_schedule(land, AdiabaticSchedule(step=0.05))
    g = land.ground()
    p = overlap_sq(coarse, g)
    assert 0 < p <= 1
    assert abs(p - overlap_sq(fine, g)) < 1e-4
    assert info.n_steps == 20000
    assert info.total_drift <= 1e-7


def test_schedule_validation():
    with pytest.raises(ParameterError):
        AdiabaticSchedule(total_time=2000, decay_time=200, step=21.0)
    with pytest.raises(ParameterError):
        AdiabaticSchedule(total_time=100, decay_time=200)
    assert AdiabaticSchedule().field_at(200.0) == pytest.approx(10 * np.exp(-1))


# --- measurement -------------------------------------------------------------

def test_measure_uniform_superposition():
    s = StateVector(np.full(4, 0.5), 2)
    rng = np.random.default_rng(5)
    counts = np.bincount([measure(s, rng).bits for _ in range(40000)], minlength=4)
    assert np.all(np.abs(counts / 40000 - 0.25) <= 0.01)
    assert stats.chisquare(counts).pvalue > 0.01


def test_measure_biased_qubit():
    s = StateVector([np.sqrt(0.9), np.sqrt(0.1)], 1)
    rng = np.random.default_rng(6)
    zeros = sum(measure(s, rng).bits == 0 for _ in range(40000))
    assert abs(zeros / 40000 - 0.9) <= 0.01


def test_measure_consumes_one_uniform():
    s = transverse_ground_state(3)
    a, b = np.random.default_rng(9), np.random.default_rng(9)
    measure(s, a)
    b.random()
    assert a.random() == b.random()


def test_measure_never_returns_zero_probability_outcome():
    s = StateVector([0, 1, 0, 0], 2)
    rng = np.random.default_rng(0)
    assert {measure(s, rng).bits for _ in range(200)} == {1}


def test_measure_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        measure(StateVector([1.0, 1.0], 1), np.random.default_rng(0))


def test_overlap_sq():
    c, d = Configuration(2, 3), Configuration(5, 3)
    assert overlap_sq(basis_state(c), c) == 1.0
    assert overlap_sq(basis_state(c), d) == 0.0
    s = transverse_ground_state(3)
    assert sum(overlap_sq(s, Configuration(a, 3)) for a in range(8)) == pytest.approx(1.0)


# --- two-spin tunneling ------------------------------------------------------

def test_tunneling_amplitude_matches_expm():
    params = TwoSpinParams(1.0, 100.0, 1.0)
    h = dense_reference_hamiltonian(two_spin_landscape(params).energies, 1.0, 2)
    times = np.array([0.0, 0.7, 13.0, 250.0])
    expected = [abs(scipy.linalg.expm(-1j * t * h)[0, 3]) for t in times]
    assert np.allclose(tunneling_amplitude(params, times), expected, atol=1e-10)


def test_tunneling_rate_positive_and_finite():
    t = tunneling_rate(TwoSpinParams(1.0, 100.0, 1.0), horizon=2000.0)
    assert np.isfinite(t) and t > 0


def test_tunneling_rate_vanishes_without_field():
    assert tunneling_rate(TwoSpinParams(1.0, 100.0, 0.0), horizon=1000.0) == 0.0


def test_tunneling_resonance_is_maximum():
    deltas = [0.0, 0.05, 0.3, 1.0, 5.0, 30.0]
    rates = [tunneling_rate(TwoSpinParams(d, 100.0, 1.0), horizon=2000.0) for d in deltas]
    assert int(np.argmax(rates)) == 0


def test_tunneling_rate_validation():
    p = TwoSpinParams(1.0, 100.0, 1.0)
    with pytest.raises(ParameterError):
        tunneling_rate(p, horizon=10.0)
    with pytest.raises(ParameterError):
        tunneling_rate(p, horizon=1000.0, dt=0.5)
