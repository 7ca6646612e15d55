"""Synthetic population, the cutoff rule, and how skewed the labels get.

The cutoff is the worst-off individual's nearest-complement distance, so it
is driven by the population's most extreme profile; the share of compatible
pairs therefore depends strongly on ``n`` and the seed.
"""
# %%
import numpy as np

from compat import synthgen

pop = synthgen.generate_profiles(300, seed=42)
dm = synthgen.distance_matrix(pop)
nearest = synthgen.nearest_complement_distances(dm)
worst = int(np.argmax(nearest))
print(f"cutoff = {nearest.max():.4f}, set by {pop.ids[worst]} with scores {pop.profiles[worst].scores}")

# %%
pairs = synthgen.label_pairs(pop, dm, synthgen.cutoff_distance(dm))
print(f"{len(pairs)} ordered pairs, {100 * pairs.positive_share:.3f}% labelled compatible")

# %%
for n in (20, 50, 100, 300, 600):
    shares = [synthgen.build_dataset(n, s).positive_share for s in range(5)]
    print(f"n={n:4d}  compatible share over 5 seeds: " + "  ".join(f"{100 * v:6.2f}%" for v in shares))

# %%
train, val, test = synthgen.split_dataset(pairs, 0.2, 0.2, seed=42)
print("train/val/test:", len(train), len(val), len(test), f"-> train is {len(train) / len(pairs):.0%} of all pairs")
