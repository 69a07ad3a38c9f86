import numpy as np
import pytest


def dense_reference_hamiltonian(energies, field, n_qubits):
    """Explicit matrix with one transverse-field entry per (state, qubit) pair."""
    dim = 1 << n_qubits
    h = np.diag(np.asarray(energies, dtype=float))
    for a in range(dim):
        for i in range(n_qubits):
            h[a ^ (1 << i), a] += field
    return h


def random_state(rng, n_qubits):
    v = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def record_criterion(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
