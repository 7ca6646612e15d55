"""File formats: profiles/pairs CSV, dataset metadata, model JSON, curves CSV.

Every writer goes through :func:`write_files_atomic`, so a failed command
never leaves half-written outputs behind.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatVersionError, MalformedFile, OutOfRange, WrongArity
from .mlp import MlpModel, TrainingHistory
from .profiles import ATTRIBUTES, FEATURE_NAMES, N_ATTRIBUTES, validate_profile
from .synthgen import LabeledPairSet, Population

MODEL_FORMAT_VERSION = 1

PROFILES_FILE = "profiles.csv"
PAIRS_FILE = "pairs.csv"
METADATA_FILE = "metadata.json"

PROFILE_HEADER = ("id", *ATTRIBUTES)
PAIRS_HEADER = ("recruit_id", "manager_id", *FEATURE_NAMES, "label")
CURVES_HEADER = ("epoch", "train_loss", "val_loss", "train_acc", "val_acc")


def write_files_atomic(contents: dict) -> None:
    """Write ``{path: text}`` via temp files, renaming only once all succeed."""
    staged = []
    try:
        for path, text in contents.items():
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            if path.is_dir():
                raise IsADirectoryError(f"{path} is a directory")
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
            staged.append((tmp, path))
            with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def fmt_number(v: float) -> str:
    v = float(v)
    return str(int(v)) if v.is_integer() else repr(v)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- profiles ----------------------------------------------------------------

def profiles_csv(pop: Population) -> str:
    return _csv_text(PROFILE_HEADER, ([p.id, *map(fmt_number, p.scores)] for p in pop.profiles))


def read_profiles_csv(path) -> Population:
    rows = _read_csv(path, PROFILE_HEADER)
    profiles = []
    seen = set()
    for lineno, row in rows:
        pid = row[0]
        if pid in seen:
            raise MalformedFile(path, f"duplicate id {pid!r}", lineno)
        seen.add(pid)
        scores = _parse_floats(path, lineno, row[1:], ATTRIBUTES)
        try:
            profiles.append(validate_profile(pid, scores))
        except (OutOfRange, WrongArity) as exc:
            raise MalformedFile(path, str(exc), lineno) from exc
    return Population(tuple(profiles))


# -- pairs -------------------------------------------------------------------

def pairs_csv(pairs: LabeledPairSet) -> str:
    rows = (
        [pairs.ids[i], pairs.ids[j], *map(fmt_number, x), str(int(label))]
        for x, label, i, j in zip(pairs.X, pairs.y, pairs.recruit_idx, pairs.manager_idx)
    )
    return _csv_text(PAIRS_HEADER, rows)


def read_pairs_csv(path, cutoff: float = float("nan")) -> LabeledPairSet:
    """Load a pairs file. The label column is required."""
    rows = _read_csv(path, PAIRS_HEADER)
    ids: dict[str, int] = {}
    X = np.empty((len(rows), 2 * N_ATTRIBUTES))
    y = np.empty(len(rows), dtype=np.int8)
    ri = np.empty(len(rows), dtype=np.intp)
    mi = np.empty(len(rows), dtype=np.intp)
    for k, (lineno, row) in enumerate(rows):
        ri[k] = ids.setdefault(row[0], len(ids))
        mi[k] = ids.setdefault(row[1], len(ids))
        vals = _parse_floats(path, lineno, row[2:-1], FEATURE_NAMES)
        for name, v in zip(FEATURE_NAMES, vals):
            if not 0.0 <= v <= 10.0:
                raise MalformedFile(path, f"{name}={v} outside [0, 10]", lineno)
        X[k] = vals
        if row[-1] not in ("0", "1"):
            raise MalformedFile(path, f"label must be 0 or 1, got {row[-1]!r}", lineno)
        y[k] = int(row[-1])
    return LabeledPairSet(X, y, ri, mi, list(ids), cutoff)


def _read_csv(path, header) -> list[tuple[int, list[str]]]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise MalformedFile(path, "empty file", 1) from None
        if tuple(h.strip() for h in got) != tuple(header):
            missing = [h for h in header if h not in got]
            detail = f"missing columns {missing}" if missing else f"expected header {','.join(header)}"
            raise MalformedFile(path, detail, 1)
        rows = []
        for row in reader:
            lineno = reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise MalformedFile(path, f"expected {len(header)} fields, got {len(row)}", lineno)
            rows.append((lineno, [c.strip() for c in row]))
    return rows


def _parse_floats(path, lineno, cells, names) -> list[float]:
    out = []
    for name, cell in zip(names, cells):
        try:
            v = float(cell)
        except ValueError:
            raise MalformedFile(path, f"{name}: not a number: {cell!r}", lineno) from None
        if not np.isfinite(v):
            raise MalformedFile(path, f"{name}: not finite: {cell!r}", lineno)
        out.append(v)
    return out


# -- dataset directory ---------------------------------------------------------

def dataset_files(out_dir, pop: Population, pairs: LabeledPairSet) -> dict:
    out_dir = Path(out_dir)
    return {
        out_dir / PROFILES_FILE: profiles_csv(pop),
        out_dir / PAIRS_FILE: pairs_csv(pairs),
        out_dir / METADATA_FILE: dumps_json(pairs.meta),
    }


def load_dataset(data_dir) -> LabeledPairSet:
    data_dir = Path(data_dir)
    meta = load_json(data_dir / METADATA_FILE)
    pairs = read_pairs_csv(data_dir / PAIRS_FILE, cutoff=float(meta.get("cutoff", "nan")))
    pairs.meta = meta
    return pairs


def load_json(path):
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedFile(path, exc.msg, exc.lineno) from None


# -- model -------------------------------------------------------------------

def model_to_dict(model: MlpModel, training_seed=None, threshold=0.5, extra=None) -> dict:
    d = {
        "format_version": MODEL_FORMAT_VERSION,
        "layer_sizes": list(model.layer_sizes),
        "hidden_activation": model.hidden_activation,
        "output_activation": model.output_activation,
        "input_scale": model.input_scale,
        "feature_order": list(FEATURE_NAMES),
        "weights": [w.tolist() for w in model.weights],
        "biases": [b.tolist() for b in model.biases],
        "training_seed": training_seed,
        "threshold": threshold,
    }
    if extra:
        d.update(extra)
    return d


def model_json(model: MlpModel, training_seed=None, threshold=0.5, extra=None) -> str:
    return dumps_json(model_to_dict(model, training_seed, threshold, extra))


def model_from_dict(d: dict, source="<model>") -> MlpModel:
    version = d.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise FormatVersionError(f"{source}: unsupported model format_version {version!r}")
    if list(d.get("feature_order", FEATURE_NAMES)) != list(FEATURE_NAMES):
        raise MalformedFile(source, "feature_order differs from recruit-then-manager layout")
    return MlpModel(
        layer_sizes=tuple(d["layer_sizes"]),
        weights=[np.array(w, dtype=float).reshape(o, i) for w, i, o in
                 zip(d["weights"], d["layer_sizes"][:-1], d["layer_sizes"][1:])],
        biases=[np.array(b, dtype=float) for b in d["biases"]],
        hidden_activation=d["hidden_activation"],
        output_activation=d["output_activation"],
        input_scale=float(d["input_scale"]),
    )


def load_model(path) -> tuple[MlpModel, dict]:
    """Return the model and the raw JSON document (threshold, split, ...)."""
    d = load_json(path)
    return model_from_dict(d, str(path)), d


def save_model(path, model: MlpModel, training_seed=None, threshold=0.5, extra=None) -> None:
    write_files_atomic({path: model_json(model, training_seed, threshold, extra)})


# -- curves ------------------------------------------------------------------

def curves_csv(history: TrainingHistory) -> str:
    return _csv_text(
        CURVES_HEADER,
        ([r.epoch, repr(r.train_loss), repr(r.val_loss), repr(r.train_accuracy), repr(r.val_accuracy)]
         for r in history.records),
    )
