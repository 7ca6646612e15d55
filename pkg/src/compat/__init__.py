"""Recruit/manager compatibility prediction from six-attribute psychometric profiles.

The pieces, bottom-up:

- :mod:`compat.profiles`: profile types, the complement optimum ``10 - x`` and distances.
- :mod:`compat.synthgen`: synthetic populations, the distance-cutoff labelling and splits.
- :mod:`compat.mlp`: numpy multilayer perceptron trained on binary cross-entropy.
- :mod:`compat.metrics`: confusion counts and the per-class classification report.
- :mod:`compat.persistence` / :mod:`compat.pipeline` / :mod:`compat.cli`: files and the ``compat`` tool.
"""

from .errors import CompatError
from .metrics import ClassificationReport, ConfusionMatrix, accuracy, confusion, report
from .mlp import MlpModel, TrainConfig, TrainingHistory, backward, bce_loss, forward, init_model, predict_label, sgd_step, train
from .profiles import ATTRIBUTES, PairFeatures, PersonalityProfile, euclidean_distance, optimum_profile, pair_features, validate_profile
from .synthgen import (
    DistanceMatrix,
    LabeledPairSet,
    Population,
    build_dataset,
    cutoff_distance,
    distance_matrix,
    generate_profiles,
    label_pairs,
    split_dataset,
)

__version__ = "0.1.0"
