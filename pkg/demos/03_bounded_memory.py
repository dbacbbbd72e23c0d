#!/usr/bin/env python3
"""Keeping the pattern store small while streaming data.

An unbounded memory model stores every sample it sees.  The growth policy
admits a sample only when it is distance-novel or fixes a real prediction
error, and evicts the most redundant pattern at capacity, so accuracy
degrades gracefully instead of memory growing without bound.
"""

import numpy as np

from grnnlab.grnn import GrnnModel, Pattern, mse_on
from grnnlab.growth import GrowthPolicy, insert_bounded

rng = np.random.default_rng(0)
target = lambda x: np.sin(3.0 * x[:, 0]) * np.cos(x[:, 1])

# probe grid for accuracy snapshots
probe_x = rng.uniform(-1.0, 1.0, (500, 2))
probe_y = target(probe_x)[:, None]

policy = GrowthPolicy(novelty_radius=5e-3, error_gate=0.05, max_patterns=150)
model = GrnnModel.empty(2, 1, sigma=0.15)

print(f"policy: novelty radius {policy.novelty_radius}, error gate "
      f"{policy.error_gate}, capacity {policy.max_patterns}")
print(f"{'seen':>6} {'stored':>7} {'probe MSE':>12}")
seen = 0
for batch in range(20):
    xs = rng.uniform(-1.0, 1.0, (250, 2))
    ys = target(xs)
    for x, y in zip(xs, ys):
        model, _ = insert_bounded(model, Pattern(x, [y]), policy)
    seen += 250
    if batch % 4 == 3:
        print(f"{seen:>6} {model.n_patterns:>7} {mse_on(model, probe_x, probe_y):>12.3e}")

assert model.n_patterns <= policy.max_patterns
print(f"\n5000 samples seen, only {model.n_patterns} kept; capacity never exceeded")

# duplicates never get in twice
before = model.n_patterns
dup = Pattern(model.x_store[0], model.y_store[0])
model, inserted = insert_bounded(model, dup, policy)
print(f"duplicate of a stored pattern re-offered: inserted={inserted}, "
      f"store still {model.n_patterns} (was {before})")
