"""Two-spin tunneling across a barrier as the minima are detuned."""

import numpy as np

from hybrid_anneal import TwoSpinParams, tunneling_rate
from hybrid_anneal.harness import fit_power_law

# u = 100 barrier, unit field; Delta is the detuning of the two wells
deltas = np.array([0.0, 0.5, 1.0, 2.0, 5.0, 10.0])
rates = [tunneling_rate(TwoSpinParams(delta=d, barrier=100.0), horizon=2000.0) for d in deltas]
for d, t in zip(deltas, rates):
    print(f"delta={d:5.1f}  T={t:.5f}")

# the rate falls off roughly as 1/Delta once Delta exceeds the tunnel splitting
fit = fit_power_law(deltas[2:], rates[2:])
print(f"log-log slope over [1, 10]: {fit.base_or_slope:.3f}")
