"""Dense multilayer perceptron for binary compatibility, written against numpy.

Hidden layers use the rectifier, the single output unit the logistic
function, and training minimises mean binary cross-entropy with plain
mini-batch gradient descent.  Raw 0..10 scores are divided by
``input_scale`` before the first layer.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np

from .errors import BadArchitecture, EmptyDataset, ShapeMismatch

N_INPUTS = 12
DEFAULT_LAYER_SIZES = (12, 64, 64, 64, 64, 1)
BCE_EPS = 1e-7


def relu(z):
    return np.maximum(z, 0.0)


def logistic(z):
    # split by sign so exp never overflows
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


HIDDEN_ACTIVATIONS = {"relu": relu}
OUTPUT_ACTIVATIONS = {"logistic": logistic}


@dataclass
class MlpModel:
    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]  # each (fan_out, fan_in)
    biases: list[np.ndarray]
    hidden_activation: str = "relu"
    output_activation: str = "logistic"
    input_scale: float = 10.0

    def __post_init__(self):
        self.layer_sizes = tuple(int(s) for s in self.layer_sizes)
        check_layer_sizes(self.layer_sizes)
        if len(self.weights) != len(self.layer_sizes) - 1 or len(self.biases) != len(self.weights):
            raise BadArchitecture("need one weight matrix and bias vector per layer")
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            shape = (self.layer_sizes[k + 1], self.layer_sizes[k])
            if w.shape != shape or b.shape != (shape[0],):
                raise BadArchitecture(
                    f"layer {k}: weights {w.shape}, biases {b.shape}; expected {shape}, ({shape[0]},)"
                )
        if self.hidden_activation not in HIDDEN_ACTIVATIONS:
            raise BadArchitecture(f"unknown hidden activation {self.hidden_activation!r}")
        if self.output_activation not in OUTPUT_ACTIVATIONS:
            raise BadArchitecture(f"unknown output activation {self.output_activation!r}")

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def params(self) -> list[np.ndarray]:
        return [*self.weights, *self.biases]

    def copy(self) -> "MlpModel":
        return copy.deepcopy(self)


@dataclass
class Gradients:
    weights: list[np.ndarray]
    biases: list[np.ndarray]


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.01
    batch_size: int = 32
    max_epochs: int = 200
    patience: int = 5
    min_delta: float = 1e-4
    seed: int = 0
    threshold: float = 0.5

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if self.patience < 1:
            raise ValueError("patience must be at least 1")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")


@dataclass
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float
    train_accuracy: float
    val_accuracy: float


@dataclass
class TrainingHistory:
    records: list[EpochRecord] = field(default_factory=list)
    stopped_epoch: int = 0
    best_epoch: int = 0  # 0 means no epoch beat the initial weights
    initial_val_loss: float = float("nan")

    @property
    def best_val_loss(self) -> float:
        if self.best_epoch == 0:
            return self.initial_val_loss
        return self.records[self.best_epoch - 1].val_loss

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


def check_layer_sizes(sizes):
    if len(sizes) < 2:
        raise BadArchitecture("need at least input and output sizes")
    if sizes[0] != N_INPUTS or sizes[-1] != 1:
        raise BadArchitecture(f"layer sizes must start at {N_INPUTS} and end at 1, got {list(sizes)}")
    if any(s < 1 for s in sizes):
        raise BadArchitecture(f"layer sizes must be positive, got {list(sizes)}")


def init_model(layer_sizes=DEFAULT_LAYER_SIZES, seed: int = 0, input_scale: float = 10.0) -> MlpModel:
    """He-normal weights (std ``sqrt(2 / fan_in)``), zero biases."""
    sizes = tuple(int(s) for s in layer_sizes)
    check_layer_sizes(sizes)
    rng = np.random.Generator(np.random.PCG64(seed))
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.standard_normal((fan_out, fan_in)) * np.sqrt(2.0 / fan_in))
        biases.append(np.zeros(fan_out))
    return MlpModel(sizes, weights, biases, input_scale=input_scale)


def zero_model(layer_sizes=DEFAULT_LAYER_SIZES, input_scale: float = 10.0) -> MlpModel:
    """All parameters zero; outputs exactly 0.5 everywhere. Handy for debugging."""
    sizes = tuple(int(s) for s in layer_sizes)
    check_layer_sizes(sizes)
    return MlpModel(
        sizes,
        [np.zeros((o, i)) for i, o in zip(sizes[:-1], sizes[1:])],
        [np.zeros(o) for o in sizes[1:]],
        input_scale=input_scale,
    )


def _as_batch(model: MlpModel, features) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != model.layer_sizes[0]:
        raise ShapeMismatch(f"expected (*, {model.layer_sizes[0]}) features, got {np.shape(features)}")
    return x


def _forward_cache(model: MlpModel, x: np.ndarray):
    """Return per-layer inputs and the pre-activation of the output layer."""
    act = HIDDEN_ACTIVATIONS[model.hidden_activation]
    a = x / model.input_scale
    inputs = [a]
    for w, b in zip(model.weights[:-1], model.biases[:-1]):
        a = act(a @ w.T + b)
        inputs.append(a)
    z = a @ model.weights[-1].T + model.biases[-1]
    return inputs, z[:, 0]


def forward(model: MlpModel, features):
    """Compatibility probability for one 12-vector (float) or a batch (array)."""
    single = np.ndim(features) == 1
    _, z = _forward_cache(model, _as_batch(model, features))
    p = OUTPUT_ACTIVATIONS[model.output_activation](z)
    return float(p[0]) if single else p


def bce_loss(prediction, label):
    """Binary cross-entropy with predictions clipped to ``[eps, 1 - eps]``.

    Elementwise on arrays; returns a float for scalar inputs.
    """
    p = np.clip(np.asarray(prediction, dtype=float), BCE_EPS, 1.0 - BCE_EPS)
    y = np.asarray(label, dtype=float)
    loss = -(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))
    return float(loss) if loss.ndim == 0 else loss


def mean_bce(model: MlpModel, X, y) -> float:
    return float(np.mean(bce_loss(forward(model, _as_batch(model, X)), y)))


def backward(model: MlpModel, X, y) -> Gradients:
    """Gradient of the mean batch cross-entropy w.r.t. every weight and bias.

    Uses the combined logistic + cross-entropy output delta ``p - y``.
    """
    x = _as_batch(model, X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if len(x) == 0:
        raise EmptyDataset("backward needs a non-empty batch")
    if len(y) != len(x):
        raise ShapeMismatch(f"{len(x)} feature rows but {len(y)} labels")
    inputs, z = _forward_cache(model, x)
    delta = (logistic(z) - y)[:, None] / len(x)
    gw = [None] * model.n_layers
    gb = [None] * model.n_layers
    for k in range(model.n_layers - 1, -1, -1):
        a = inputs[k]
        gw[k] = delta.T @ a
        gb[k] = delta.sum(axis=0)
        if k > 0:
            # relu' evaluated on the layer's output: positive iff pre-activation positive
            delta = (delta @ model.weights[k]) * (a > 0)
    return Gradients(gw, gb)


def sgd_step(model: MlpModel, grads: Gradients, learning_rate: float) -> MlpModel:
    """In-place update ``w -= lr * grad``; returns the same model."""
    if len(grads.weights) != model.n_layers or len(grads.biases) != model.n_layers:
        raise ShapeMismatch("gradient layer count does not match model")
    for p, g in zip(model.params(), [*grads.weights, *grads.biases]):
        if p.shape != g.shape:
            raise ShapeMismatch(f"parameter {p.shape} vs gradient {g.shape}")
    for p, g in zip(model.params(), [*grads.weights, *grads.biases]):
        p -= learning_rate * g
    return model


def predict_label(model: MlpModel, features, threshold: float = 0.5):
    """1 where the probability is ``>= threshold``, else 0."""
    p = forward(model, features)
    if isinstance(p, float):
        return int(p >= threshold)
    return (p >= threshold).astype(np.int8)


def _accuracy(p, y, threshold):
    return float(np.mean((p >= threshold) == (y == 1)))


def train(model: MlpModel, train_X, train_y, val_X, val_y, config: TrainConfig = TrainConfig(), log=None):
    """Mini-batch gradient descent with early stopping on validation loss.

    Training stops once validation loss has failed to improve on the
    reference value by ``min_delta`` for ``patience`` consecutive epochs.
    Returns a new model holding the weights of the lowest-validation-loss
    epoch, together with the per-epoch history.
    """
    train_X = np.asarray(train_X, dtype=float)
    train_y = np.asarray(train_y, dtype=float).reshape(-1)
    val_X = np.asarray(val_X, dtype=float)
    val_y = np.asarray(val_y, dtype=float).reshape(-1)
    if len(train_X) == 0 or len(val_X) == 0:
        raise EmptyDataset("train and validation sets must be non-empty")
    if len(train_X) != len(train_y) or len(val_X) != len(val_y):
        raise ShapeMismatch("features and labels differ in length")
    _as_batch(model, train_X[:1])
    _as_batch(model, val_X[:1])

    model = model.copy()
    rng = np.random.Generator(np.random.PCG64(config.seed))
    history = TrainingHistory()
    best_model = model.copy()
    best_loss = history.initial_val_loss = mean_bce(model, val_X, val_y)
    reference = best_loss
    wait = 0
    m = len(train_X)

    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(m)
        for start in range(0, m, config.batch_size):
            idx = order[start:start + config.batch_size]
            sgd_step(model, backward(model, train_X[idx], train_y[idx]), config.learning_rate)

        p_train = forward(model, train_X)
        p_val = forward(model, val_X)
        rec = EpochRecord(
            epoch,
            float(np.mean(bce_loss(p_train, train_y))),
            float(np.mean(bce_loss(p_val, val_y))),
            _accuracy(p_train, train_y, config.threshold),
            _accuracy(p_val, val_y, config.threshold),
        )
        history.records.append(rec)
        if log is not None:
            log(rec)

        if rec.val_loss < best_loss:
            best_loss = rec.val_loss
            best_model = model.copy()
            history.best_epoch = epoch
        if rec.val_loss < reference - config.min_delta:
            reference = rec.val_loss
            wait = 0
        else:
            wait += 1
        history.stopped_epoch = epoch
        if wait >= config.patience:
            break

    return best_model, history
