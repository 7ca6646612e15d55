"""End-to-end steps behind the command-line tool: generate, train, evaluate, predict."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import metrics, mlp, persistence, synthgen
from .errors import DataError, WrongArity
from .profiles import ATTRIBUTES, euclidean_distance, optimum_profile, validate_profile


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run. Defaults give the 8:2 / 8:2 split regime."""

    population_n: int = 300
    data_seed: int = 42
    test_fraction: float = 0.2
    val_fraction: float = 0.2
    layer_sizes: tuple[int, ...] = mlp.DEFAULT_LAYER_SIZES
    input_scale: float = 10.0
    train: mlp.TrainConfig = field(default_factory=mlp.TrainConfig)

    def __post_init__(self):
        for name in ("test_fraction", "val_fraction"):
            f = getattr(self, name)
            if not 0 < f < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {f}")
        object.__setattr__(self, "layer_sizes", tuple(int(s) for s in self.layer_sizes))
        mlp.check_layer_sizes(self.layer_sizes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["layer_sizes"] = list(self.layer_sizes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        known = {f.name for f in dataclasses.fields(cls)}
        train_known = {f.name for f in dataclasses.fields(mlp.TrainConfig)}
        train = dict(d.pop("train", {}))
        # flat keys like {"learning_rate": 0.05} are accepted too
        for k in list(d):
            if k in train_known and k not in known:
                train[k] = d.pop(k)
        unknown = set(d) - known | set(train) - train_known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d, train=mlp.TrainConfig(**train))

    @classmethod
    def load(cls, path) -> "RunConfig":
        return cls.from_dict(persistence.load_json(path))


def generate(n: int, seed: int, out_dir, profiles_path=None) -> synthgen.LabeledPairSet:
    """Write profiles, pairs and metadata for a population to ``out_dir``.

    With ``profiles_path`` the population is read from that CSV instead of
    being drawn at random; ``n`` and ``seed`` then only feed the metadata.
    """
    if profiles_path is not None:
        pop = persistence.read_profiles_csv(profiles_path)
        if len(pop) < 2:
            raise synthgen.PopulationTooSmall(f"need at least 2 individuals, got {len(pop)}")
    else:
        if n < 2:
            raise synthgen.PopulationTooSmall(f"need at least 2 individuals, got {n}")
        pop = synthgen.generate_profiles(n, seed)
    pairs = synthgen.label_population(pop)
    pairs.meta["split_seed"] = seed
    pairs.meta["n_samples"] = len(pairs)
    persistence.write_files_atomic(persistence.dataset_files(out_dir, pop, pairs))
    return pairs


@dataclass
class TrainResult:
    model: mlp.MlpModel
    history: mlp.TrainingHistory
    config: RunConfig
    split: dict


def split_for(pairs: synthgen.LabeledPairSet, test_fraction, val_fraction, seed):
    return synthgen.split_dataset(pairs, test_fraction, val_fraction, seed)


def train(data_dir, config: RunConfig, log=None) -> TrainResult:
    pairs = persistence.load_dataset(data_dir)
    split_seed = int(pairs.meta.get("split_seed", config.data_seed))
    tr, va, _ = split_for(pairs, config.test_fraction, config.val_fraction, split_seed)
    model = mlp.init_model(config.layer_sizes, config.train.seed, config.input_scale)
    model, history = mlp.train(model, tr.X, tr.y, va.X, va.y, config.train, log=log)
    split = {
        "test_fraction": config.test_fraction,
        "val_fraction": config.val_fraction,
        "seed": split_seed,
    }
    return TrainResult(model, history, config, split)


def train_outputs(result: TrainResult, model_out, curves_out, data_dir=None) -> dict:
    """``{path: text}`` for the model file, curves CSV and resolved config."""
    extra = {"split": result.split}
    if data_dir is not None:
        meta = persistence.load_json(Path(data_dir) / persistence.METADATA_FILE)
        extra["data_cutoff"] = meta.get("cutoff")
    cfg = result.config
    model_out = Path(model_out)
    return {
        model_out: persistence.model_json(result.model, cfg.train.seed, cfg.train.threshold, extra),
        Path(curves_out): persistence.curves_csv(result.history),
        resolved_config_path(model_out): persistence.dumps_json(cfg.to_dict()),
    }


def resolved_config_path(model_out) -> Path:
    model_out = Path(model_out)
    return model_out.with_name(model_out.stem + ".config.json")


def evaluate(model_path, data_dir=None, all_path=None) -> metrics.ClassificationReport:
    """Score a model on the recorded test partition of ``data_dir``, or on every row of ``all_path``."""
    model, doc = persistence.load_model(model_path)
    threshold = float(doc.get("threshold", 0.5))
    if all_path is not None:
        subset = persistence.read_pairs_csv(all_path)
    else:
        if data_dir is None:
            raise ValueError("need a dataset directory or an explicit pairs file")
        pairs = persistence.load_dataset(data_dir)
        split = doc.get("split") or {
            "test_fraction": 0.2,
            "val_fraction": 0.2,
            "seed": pairs.meta.get("split_seed", 0),
        }
        _, _, subset = split_for(pairs, split["test_fraction"], split["val_fraction"], split["seed"])
    preds = mlp.predict_label(model, subset.X, threshold)
    return metrics.classification_report(preds, subset.y)


def parse_scores(text: str, role: str) -> list[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != len(ATTRIBUTES):
        raise WrongArity(len(ATTRIBUTES), len(parts))
    out = []
    for name, p in zip(ATTRIBUTES, parts):
        try:
            out.append(float(p))
        except ValueError:
            raise DataError(f"{role} {name}: not a number: {p!r}") from None
    return out


def predict(model_path, recruit_scores, manager_scores, explain=False) -> str:
    model, doc = persistence.load_model(model_path)
    threshold = float(doc.get("threshold", 0.5))
    recruit = validate_profile("recruit", recruit_scores)
    manager = validate_profile("manager", manager_scores)
    x = np.array(recruit.scores + manager.scores)
    prob = mlp.forward(model, x)
    lines = [f"probability: {prob:.4f}", f"label: {int(prob >= threshold)}"]
    if explain:
        swapped = mlp.forward(model, np.array(manager.scores + recruit.scores))
        dist = euclidean_distance(optimum_profile(recruit), manager)
        lines += [
            f"threshold: {threshold}",
            f"probability (roles swapped): {swapped:.4f}",
            f"complement distance: {dist:.4f} (same either way round)",
        ]
        cutoff = doc.get("data_cutoff")
        if cutoff is not None:
            lines.append(f"synthetic label at cutoff {cutoff:.4f}: {int(dist <= cutoff)} (symmetric)")
    return "\n".join(lines) + "\n"
