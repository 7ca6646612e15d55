"""Profiles, their complements, and the distance that decides compatibility.

Run with ``python demos/01_profiles_and_complements.py``.
"""
# %%
from compat.profiles import ATTRIBUTES, euclidean_distance, optimum_profile, pair_features, validate_profile

recruit = validate_profile("ana", [2, 7, 5, 0, 10, 3])
manager = validate_profile("ben", [8, 3, 6, 9, 1, 7])
print(dict(zip(ATTRIBUTES, recruit.scores)))

# %%
# The ideal counterpart of a person mirrors every score around 5.
ideal = optimum_profile(recruit)
print("ideal counterpart of ana:", ideal.scores)

# %%
# Distance from ana's ideal to ben. Because 10 - a - b is symmetric in a and b,
# ben's ideal is exactly as far from ana.
print(f"ana's ideal -> ben: {euclidean_distance(ideal, manager):.4f}")
print(f"ben's ideal -> ana: {euclidean_distance(optimum_profile(manager), recruit):.4f}")

# %%
# The network sees the pair as one 12-vector, recruit first.
print(pair_features(recruit, manager).features)
