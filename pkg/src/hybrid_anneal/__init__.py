"""Hybrid quantum-classical annealing on random energy landscapes."""

__version__ = "0.1.0"

from .annealers import (
    Algorithm,
    HAParams,
    SASchedule,
    Trajectory,
    metropolis_accept,
    run_adiabatic,
    run_markov,
)
from .dynamics import (
    AdiabaticSchedule,
    EvolveParams,
    StateVector,
    basis_state,
    evolve,
    evolve_adiabatic,
    measure,
    overlap_sq,
    transverse_ground_state,
    tunneling_rate,
)
from .landscape import (
    Configuration,
    Landscape,
    TwoSpinParams,
    generate_rem,
    level_at_rank,
    make_quasi_degenerate,
    two_spin_landscape,
)
