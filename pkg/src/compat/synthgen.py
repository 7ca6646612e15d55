"""Synthetic population, optimum-distance matrix, cutoff and labelled pair dataset.

Individuals get six integer scores drawn independently and uniformly from
``{0, ..., 10}``.  Each individual's ideal counterpart is its complement
``10 - x``; the distance from that complement to every *other* individual
decides compatibility.  The cutoff is the largest of the per-individual
nearest-complement distances, so every individual ends up with at least one
compatible partner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import EmptySplit, PopulationTooSmall
from .profiles import (
    N_ATTRIBUTES,
    SCORE_MAX,
    PairFeatures,
    PersonalityProfile,
    validate_profile,
)

#: Recorded in dataset metadata. Scores come from ``Generator.integers(0, 11)``
#: filled row-major (individual, attribute), which numpy maps with Lemire's
#: bounded-integer method; the stream is identical across platforms.
GENERATOR_NAME = "numpy.random.Generator(PCG64).integers(0, 11)"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Population:
    profiles: tuple[PersonalityProfile, ...]
    seed: int | None = None

    def __post_init__(self):
        ids = [p.id for p in self.profiles]
        if len(set(ids)) != len(ids):
            raise ValueError("profile ids must be unique")

    def __len__(self):
        return len(self.profiles)

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.profiles]

    @property
    def scores(self) -> np.ndarray:
        return np.array([p.scores for p in self.profiles], dtype=float).reshape(-1, N_ATTRIBUTES)


@dataclass(frozen=True)
class DistanceMatrix:
    d: np.ndarray

    @property
    def n(self) -> int:
        return self.d.shape[0]


@dataclass(frozen=True)
class PairSample:
    features: PairFeatures
    label: int


@dataclass
class LabeledPairSet:
    """All ordered pairs ``(recruit, manager)`` as arrays.

    ``X`` is ``(m, 12)`` with the recruit's scores first; ``y`` holds 0/1
    labels; ``recruit_idx``/``manager_idx`` index into ``ids``.
    """

    X: np.ndarray
    y: np.ndarray
    recruit_idx: np.ndarray
    manager_idx: np.ndarray
    ids: list[str]
    cutoff: float
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.y)

    @property
    def positive_share(self) -> float:
        return float(self.y.mean()) if len(self.y) else 0.0

    @property
    def samples(self) -> Iterator[PairSample]:
        for row, label, i, j in zip(self.X, self.y, self.recruit_idx, self.manager_idx):
            feats = PairFeatures(self.ids[i], self.ids[j], tuple(float(v) for v in row))
            yield PairSample(feats, int(label))

    def subset(self, index: np.ndarray) -> "LabeledPairSet":
        return LabeledPairSet(
            X=self.X[index],
            y=self.y[index],
            recruit_idx=self.recruit_idx[index],
            manager_idx=self.manager_idx[index],
            ids=self.ids,
            cutoff=self.cutoff,
            meta=dict(self.meta),
        )


def generate_profiles(n: int, seed: int) -> Population:
    if n < 0:
        raise ValueError("n must be non-negative")
    raw = make_rng(seed).integers(0, int(SCORE_MAX) + 1, size=(n, N_ATTRIBUTES))
    profiles = tuple(validate_profile(f"p{i}", row) for i, row in enumerate(raw.tolist()))
    return Population(profiles, seed)


def distance_matrix(pop: Population) -> DistanceMatrix:
    """``d[i, j]`` = distance from the complement of individual i to individual j.

    The diagonal is kept for inspection but never used for the cutoff or labels.
    """
    if len(pop) < 1:
        raise PopulationTooSmall("distance matrix needs at least one individual")
    x = pop.scores
    optimum = SCORE_MAX - x
    diff = optimum[:, None, :] - x[None, :, :]
    return DistanceMatrix(np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)))


def nearest_complement_distances(dm: DistanceMatrix) -> np.ndarray:
    """Per individual, the smallest distance to any other individual."""
    d = dm.d.copy()
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def cutoff_distance(dm: DistanceMatrix) -> float:
    if dm.n < 2:
        raise PopulationTooSmall(f"cutoff needs at least 2 individuals, got {dm.n}")
    return float(nearest_complement_distances(dm).max())


def label_pairs(pop: Population, dm: DistanceMatrix, cutoff: float) -> LabeledPairSet:
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    n = len(pop)
    ii, jj = np.nonzero(~np.eye(n, dtype=bool))
    x = pop.scores
    X = np.concatenate([x[ii], x[jj]], axis=1)
    y = (dm.d[ii, jj] <= cutoff).astype(np.int8)
    return LabeledPairSet(X, y, ii, jj, pop.ids, float(cutoff))


def label_population(pop: Population) -> LabeledPairSet:
    dm = distance_matrix(pop)
    cutoff = cutoff_distance(dm)
    pairs = label_pairs(pop, dm, cutoff)
    pairs.meta = {
        "n": len(pop),
        "seed": pop.seed,
        "cutoff": cutoff,
        "positive_share": pairs.positive_share,
        "generator": GENERATOR_NAME if pop.seed is not None else "profiles-file",
    }
    return pairs


def build_dataset(n: int, seed: int) -> LabeledPairSet:
    if n < 2:
        raise PopulationTooSmall(f"need at least 2 individuals, got {n}")
    return label_population(generate_profiles(n, seed))


def split_sizes(m: int, test_fraction: float, val_fraction: float) -> tuple[int, int, int]:
    """Partition sizes ``(train, val, test)``; counts are rounded half-up."""
    for name, f in (("test_fraction", test_fraction), ("val_fraction", val_fraction)):
        if not 0 < f < 1:
            raise ValueError(f"{name} must lie in (0, 1), got {f}")
    n_test = math.floor(m * test_fraction + 0.5)
    n_val = math.floor((m - n_test) * val_fraction + 0.5)
    n_train = m - n_test - n_val
    if min(n_train, n_val, n_test) < 1:
        raise EmptySplit(
            f"{m} samples split {test_fraction}/{val_fraction} gives "
            f"train={n_train}, val={n_val}, test={n_test}"
        )
    return n_train, n_val, n_test


def split_indices(m, test_fraction, val_fraction, seed) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_train, n_val, _ = split_sizes(m, test_fraction, val_fraction)
    perm = make_rng(seed).permutation(m)
    test = perm[n_train + n_val:]
    val = perm[n_train:n_train + n_val]
    train = perm[:n_train]
    return train, val, test


def split_dataset(
    pairs: LabeledPairSet, test_fraction: float, val_fraction: float, seed: int
) -> tuple[LabeledPairSet, LabeledPairSet, LabeledPairSet]:
    """Seeded shuffle, then carve off test, then validation from the remainder."""
    train, val, test = split_indices(len(pairs), test_fraction, val_fraction, seed)
    return pairs.subset(train), pairs.subset(val), pairs.subset(test)


def population_from_rows(rows: Sequence[tuple[str, Sequence[float]]]) -> Population:
    return Population(tuple(validate_profile(i, s) for i, s in rows))
