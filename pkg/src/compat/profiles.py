"""Profile and pair-feature types, the complement optimum and the distance metric."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRange, WrongArity

ATTRIBUTES = (
    "faith",
    "decisiveness",
    "adaptability",
    "dominance",
    "ambition",
    "emotional_management",
)
N_ATTRIBUTES = len(ATTRIBUTES)
SCORE_MIN = 0.0
SCORE_MAX = 10.0

# recruit half first, manager half second
FEATURE_NAMES = tuple(f"r_{a}" for a in ATTRIBUTES) + tuple(f"m_{a}" for a in ATTRIBUTES)

OPTIMUM_SUFFIX = "*"


@dataclass(frozen=True)
class PersonalityProfile:
    id: str
    scores: tuple[float, ...]

    def __post_init__(self):
        if len(self.scores) != N_ATTRIBUTES:
            raise WrongArity(N_ATTRIBUTES, len(self.scores))
        for j, s in enumerate(self.scores):
            if not SCORE_MIN <= s <= SCORE_MAX:
                raise OutOfRange(j, s, ATTRIBUTES[j])


@dataclass(frozen=True)
class PairFeatures:
    recruit_id: str
    manager_id: str
    features: tuple[float, ...]

    @property
    def recruit_scores(self) -> tuple[float, ...]:
        return self.features[:N_ATTRIBUTES]

    @property
    def manager_scores(self) -> tuple[float, ...]:
        return self.features[N_ATTRIBUTES:]


def validate_profile(id, raw_scores) -> PersonalityProfile:
    """Build a profile from raw scores, rejecting wrong length or out-of-range values.

    NaN is rejected as out of range.
    """
    scores = tuple(float(s) for s in raw_scores)
    return PersonalityProfile(str(id), scores)


def optimum_profile(x: PersonalityProfile) -> PersonalityProfile:
    """The ideal counterpart of ``x``: every score mirrored as ``10 - s``."""
    return PersonalityProfile(x.id + OPTIMUM_SUFFIX, tuple(SCORE_MAX - s for s in x.scores))


def euclidean_distance(a: PersonalityProfile, b: PersonalityProfile) -> float:
    return math.sqrt(sum((p - q) ** 2 for p, q in zip(a.scores, b.scores)))


def pair_features(recruit: PersonalityProfile, manager: PersonalityProfile) -> PairFeatures:
    return PairFeatures(recruit.id, manager.id, recruit.scores + manager.scores)
