"""Time evolution in a transverse field, then a measurement."""

import numpy as np

from hybrid_anneal import (
    AdiabaticSchedule,
    EvolveParams,
    basis_state,
    evolve,
    evolve_adiabatic,
    generate_rem,
    level_at_rank,
    measure,
    overlap_sq,
)
from hybrid_anneal.dynamics import dense_evolve

land = generate_rem(8, seed=3)

# %% quench a mid-spectrum basis state for t = 10 at field B = 0.5
start = basis_state(level_at_rank(land, 128))
out = evolve(land, EvolveParams(field=0.5, time=10.0), start)
print("norm after evolution:", out.norm())

# the Krylov propagator agrees with a dense eigendecomposition
ref = dense_evolve(land, 0.5, 10.0, start.amplitudes)
print("max deviation from dense:", np.abs(out.amplitudes - ref).max())

# %% projective measurements follow |amplitude|^2
rng = np.random.default_rng(0)
hits = [measure(out, rng).bits for _ in range(2000)]
top = np.argsort(out.probabilities())[::-1][:3]
for b in top:
    print(f"{b:08b}: predicted {out.probabilities()[b]:.3f} sampled {hits.count(b) / 2000:.3f}")

# %% a short adiabatic sweep; the full default runs t1 = 2000
sched = AdiabaticSchedule(total_time=400.0, decay_time=40.0, field=10.0)
final = evolve_adiabatic(land, sched)
print("ground-state overlap after the sweep:", overlap_sq(final, land.ground()))
