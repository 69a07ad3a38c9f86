"""Hybrid annealing against thermal annealing on one landscape."""

import numpy as np

from hybrid_anneal import Algorithm, HAParams, generate_rem, level_at_rank, run_markov

land = generate_rem(9, seed=5)
start = level_at_rank(land, 2 ** 8)  # a middle-of-the-spectrum start

# %% each algorithm gets its own generator so runs are reproducible
for alg in (Algorithm.HA, Algorithm.SA, Algorithm.SA2, Algorithm.HASA):
    traj = run_markov(alg, land, start, max_steps=200, rng=np.random.default_rng(42))
    best = traj.best_ranks()
    print(f"{alg.value:5s} best rank after 10/50/200 steps: "
          f"{best[9]:4d} {best[49]:4d} {best[199]:4d}  ground at step {traj.reached_ground_at}")

# %% HA with a cooler acceptance and longer quenches
params = HAParams(beta=20.0, evolve_time=20.0)
traj = run_markov(Algorithm.HA, land, start, 500, params, np.random.default_rng(1),
                  stop_at_ground=True)
print("HA (beta=20, t=20) reached ground at step", traj.reached_ground_at)
