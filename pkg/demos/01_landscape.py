"""Random energy landscapes and their ranks."""

import numpy as np

from hybrid_anneal import generate_rem, level_at_rank, make_quasi_degenerate

# %% a 6-qubit instance: 64 Gaussian energies, one per bit string
land = generate_rem(6, seed=11)
print("dimension", land.dim)
print("ground", land.ground_bits, f"{land.ground_energy:+.4f}")

# ranks are 1-based, rank 1 is the ground state
for r in (1, 2, 3, land.dim):
    cfg = level_at_rank(land, r)
    print(f"rank {r:2d}: bits={cfg.bits:06b} E={land.energies[cfg.bits]:+.4f}")

# %% same seed, same landscape
assert np.array_equal(land.energies, generate_rem(6, seed=11).energies)

# %% squeeze the four lowest excitations onto E_GS + 0.001
deg = make_quasi_degenerate(land, k=4, offset=0.001)
low = np.sort(deg.energies)[:6]
print("lowest levels after squeezing:", np.round(low - deg.ground_energy, 4))
print("ground unchanged:", deg.ground_bits == land.ground_bits)
