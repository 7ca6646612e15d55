import math

import numpy as np
import pytest

from compat import mlp
from compat.errors import BadArchitecture, EmptyDataset, ShapeMismatch
from oracles import numeric_gradients, relative_error


def random_batch(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.integers(0, 11, (n, 12)).astype(float), rng.integers(0, 2, n).astype(float)


def perturbed(sizes, seed):
    """Random model with non-zero biases so every parameter is exercised."""
    model = mlp.init_model(sizes, seed)
    rng = np.random.default_rng(seed + 1000)
    for b in model.biases:
        b[:] = rng.normal(0, 0.1, b.shape)
    return model


# -- init ----------------------------------------------------------------------

def test_init_default_shapes():
    model = mlp.init_model(seed=1)
    assert model.layer_sizes == (12, 64, 64, 64, 64, 1)
    assert [w.shape for w in model.weights] == [(64, 12), (64, 64), (64, 64), (64, 64), (1, 64)]
    assert all(np.all(b == 0) for b in model.biases)


def test_init_deterministic():
    a, b = mlp.init_model(seed=3), mlp.init_model(seed=3)
    assert all(np.array_equal(x, y) for x, y in zip(a.params(), b.params()))
    c = mlp.init_model(seed=4)
    assert not np.array_equal(a.weights[0], c.weights[0])


def test_init_logistic_regression_case():
    model = mlp.init_model([12, 1], 0)
    assert [w.shape for w in model.weights] == [(1, 12)]


def test_init_scale_follows_fan_in():
    model = mlp.init_model([12, 2000, 1], 0)
    assert model.weights[0].std() == pytest.approx(math.sqrt(2 / 12), rel=0.02)
    assert model.weights[1].std() == pytest.approx(math.sqrt(2 / 2000), rel=0.1)


@pytest.mark.parametrize("sizes", [[12], [11, 1], [12, 64, 2], [12, 0, 1]])
def test_init_bad_architecture(sizes):
    with pytest.raises(BadArchitecture):
        mlp.init_model(sizes, 0)


def test_model_rejects_inconsistent_weights():
    model = mlp.init_model([12, 4, 1], 0)
    with pytest.raises(BadArchitecture):
        mlp.MlpModel(model.layer_sizes, [model.weights[0].T, model.weights[1]], model.biases)


# -- forward -------------------------------------------------------------------

def test_forward_zero_model_is_half():
    x, _ = random_batch(5)
    assert mlp.forward(mlp.zero_model(), x[0]) == 0.5
    assert np.all(mlp.forward(mlp.zero_model(), x) == 0.5)


def test_forward_single_layer_closed_form():
    model = mlp.init_model([12, 1], 7)
    model.biases[0][:] = 0.3
    x = np.arange(12, dtype=float) / 2
    z = model.weights[0][0] @ (x / 10) + 0.3
    assert mlp.forward(model, x) == pytest.approx(1 / (1 + math.exp(-z)), rel=1e-12)


def test_forward_strictly_inside_unit_interval():
    x, _ = random_batch(200, 3)
    p = mlp.forward(mlp.init_model(seed=5), x)
    assert np.all((p > 0) & (p < 1))


def test_logistic_handles_extremes():
    out = mlp.logistic(np.array([-1000.0, 0.0, 1000.0]))
    assert out.tolist() == [0.0, 0.5, 1.0]


@pytest.mark.parametrize("shape", [(11,), (3, 13), (2, 3, 12)])
def test_forward_shape_mismatch(shape):
    with pytest.raises(ShapeMismatch):
        mlp.forward(mlp.zero_model(), np.zeros(shape))


# -- loss ------------------------------------------------------------------------

def test_bce_examples():
    assert mlp.bce_loss(0.5, 1) == pytest.approx(0.693147, abs=1e-6)
    assert mlp.bce_loss(0.9, 0) == pytest.approx(2.302585, abs=1e-6)
    assert mlp.bce_loss(1.0, 1) == pytest.approx(0, abs=2e-7)
    assert mlp.bce_loss(0.0, 0) == pytest.approx(0, abs=2e-7)


def test_bce_clipped_at_saturation():
    assert mlp.bce_loss(0.0, 1) == pytest.approx(-math.log(1e-7))
    assert np.isfinite(mlp.bce_loss(1.0, 0))


# -- backward ------------------------------------------------------------------

def test_backward_logistic_regression_closed_form():
    model = mlp.init_model([12, 1], 2)
    x, y = random_batch(1, 9)
    g = mlp.backward(model, x, y)
    p = mlp.forward(model, x[0])
    assert g.weights[0][0] == pytest.approx((p - y[0]) * x[0] / 10, rel=1e-12)
    assert g.biases[0][0] == pytest.approx(p - y[0], rel=1e-12)


def test_backward_duplicated_batch_equals_single():
    model = perturbed([12, 8, 1], 4)
    x, y = random_batch(1, 2)
    one = mlp.backward(model, x, y)
    many = mlp.backward(model, np.repeat(x, 5, axis=0), np.repeat(y, 5))
    for a, b in zip(one.weights + one.biases, many.weights + many.biases):
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("sizes", [[12, 8, 1], [12, 64, 1], [12, 8, 8, 1]])
@pytest.mark.parametrize("batch", [1, 16])
def test_backward_matches_finite_differences(sizes, batch):
    model = perturbed(sizes, 11)
    x, y = random_batch(batch, 5)
    analytic = mlp.backward(model, x, y)
    numeric = numeric_gradients(lambda: mlp.mean_bce(model, x, y), model.params(), step=1e-5)
    flat = [g.reshape(-1) for g in analytic.weights + analytic.biases]
    worst = max(relative_error(a, n) for ga, gn in zip(flat, numeric) for a, n in zip(ga, gn))
    assert worst < 1e-4


def test_backward_errors():
    model = mlp.zero_model([12, 1])
    with pytest.raises(EmptyDataset):
        mlp.backward(model, np.zeros((0, 12)), np.zeros(0))
    with pytest.raises(ShapeMismatch):
        mlp.backward(model, np.zeros((2, 12)), np.zeros(3))
    with pytest.raises(ShapeMismatch):
        mlp.backward(model, np.zeros((2, 10)), np.zeros(2))


# -- sgd -----------------------------------------------------------------------

def _snapshot(model):
    return [p.copy() for p in model.params()]


def test_sgd_zero_gradient_and_zero_lr_are_noops():
    model = mlp.init_model([12, 8, 1], 0)
    before = _snapshot(model)
    zeros = mlp.Gradients([np.zeros_like(w) for w in model.weights], [np.zeros_like(b) for b in model.biases])
    mlp.sgd_step(model, zeros, 0.5)
    x, y = random_batch(4)
    mlp.sgd_step(model, mlp.backward(model, x, y), 0.0)
    assert all(np.array_equal(a, b) for a, b in zip(before, model.params()))


def test_sgd_step_reduces_logistic_loss():
    model = mlp.init_model([12, 1], 1)
    x, y = random_batch(32, 1)
    before = mlp.mean_bce(model, x, y)
    mlp.sgd_step(model, mlp.backward(model, x, y), 1e-3)
    assert mlp.mean_bce(model, x, y) < before


def test_sgd_update_rule():
    model = mlp.init_model([12, 3, 1], 1)
    before = _snapshot(model)
    x, y = random_batch(4, 2)
    g = mlp.backward(model, x, y)
    mlp.sgd_step(model, g, 0.25)
    for p0, p1, gr in zip(before, model.params(), g.weights + g.biases):
        np.testing.assert_array_equal(p1, p0 - 0.25 * gr)


def test_sgd_shape_mismatch():
    model = mlp.init_model([12, 3, 1], 1)
    other = mlp.backward(mlp.init_model([12, 4, 1], 1), *random_batch(2))
    with pytest.raises(ShapeMismatch):
        mlp.sgd_step(model, other, 0.1)


# -- predict -------------------------------------------------------------------

def test_predict_tie_goes_to_one():
    assert mlp.predict_label(mlp.zero_model(), np.full(12, 5.0), 0.5) == 1


def test_predict_threshold_extremes():
    model = mlp.init_model(seed=2)
    x, _ = random_batch(100, 4)
    assert np.all(mlp.predict_label(model, x, 0.0) == 1)
    assert np.all(mlp.predict_label(model, x, 1 - 1e-9) == 0)


# -- train ---------------------------------------------------------------------

def toy_separable(seed=0, n=400):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 11, (n, 12)).astype(float)
    return x, (x.sum(axis=1) > 60).astype(float)


def test_train_single_epoch():
    x, y = random_batch(40)
    _, h = mlp.train(mlp.init_model([12, 4, 1], 0), x, y, x, y, mlp.TrainConfig(max_epochs=1))
    assert len(h.records) == 1 and h.stopped_epoch == 1


def test_toy_set_is_linearly_separable():
    x, y = toy_separable()
    assert np.array_equal((x @ np.ones(12) - 60.5 > 0).astype(float), y)
    linear_model = pytest.importorskip("sklearn.linear_model")
    lr = linear_model.LogisticRegression(C=1e6, max_iter=10_000).fit(x, y)
    assert lr.score(x, y) == 1.0


def test_train_fits_separable_toy_set():
    x, y = toy_separable()
    cfg = mlp.TrainConfig(learning_rate=0.1, batch_size=16, max_epochs=50, patience=50, seed=0)
    best, h = mlp.train(mlp.init_model(seed=0), x, y, x, y, cfg)
    assert h.column("train_accuracy").max() == 1.0
    assert np.array_equal(mlp.predict_label(best, x), y)


def test_train_deterministic():
    x, y = random_batch(120, 6)
    cfg = mlp.TrainConfig(max_epochs=8, seed=3)
    a_model, a_hist = mlp.train(mlp.init_model([12, 16, 1], 2), x[:90], y[:90], x[90:], y[90:], cfg)
    b_model, b_hist = mlp.train(mlp.init_model([12, 16, 1], 2), x[:90], y[:90], x[90:], y[90:], cfg)
    assert a_hist == b_hist
    assert all(np.array_equal(p, q) for p, q in zip(a_model.params(), b_model.params()))


def test_train_does_not_mutate_input_model():
    model = mlp.init_model([12, 4, 1], 0)
    before = _snapshot(model)
    x, y = random_batch(50)
    mlp.train(model, x, y, x, y, mlp.TrainConfig(max_epochs=2))
    assert all(np.array_equal(a, b) for a, b in zip(before, model.params()))


def test_best_epoch_contract_and_loss_sanity():
    x, y = toy_separable(1, 300)
    cfg = mlp.TrainConfig(learning_rate=0.05, max_epochs=30, patience=3, seed=1)
    best, h = mlp.train(mlp.init_model([12, 16, 1], 1), x[:200], y[:200], x[200:], y[200:], cfg)
    val_losses = h.column("val_loss")
    assert 0 <= h.initial_val_loss <= -math.log(mlp.BCE_EPS)
    assert h.best_epoch >= 1
    assert h.best_val_loss == val_losses.min()
    assert mlp.mean_bce(best, x[200:], y[200:]) == pytest.approx(val_losses.min(), rel=1e-12)
    assert h.best_val_loss <= h.initial_val_loss
    assert len(h.records) == h.stopped_epoch <= cfg.max_epochs


def test_early_stopping_triggers():
    # labels are noise, so validation loss plateaus quickly
    x, y = random_batch(200, 8)
    cfg = mlp.TrainConfig(learning_rate=0.05, max_epochs=200, patience=2, min_delta=1e-2, seed=0)
    _, h = mlp.train(mlp.init_model([12, 4, 1], 0), x[:150], y[:150], x[150:], y[150:], cfg)
    assert h.stopped_epoch < 200


def test_train_never_returns_worse_than_initial():
    # a huge step overshoots; the initial weights must then win
    x, y = random_batch(60, 1)
    cfg = mlp.TrainConfig(learning_rate=50.0, max_epochs=3, patience=1, seed=0)
    model = mlp.init_model([12, 4, 1], 0)
    best, h = mlp.train(model, x, y, x, y, cfg)
    assert mlp.mean_bce(best, x, y) <= h.initial_val_loss
    assert h.best_val_loss == mlp.mean_bce(best, x, y)


def test_train_rejects_empty():
    x, y = random_batch(10)
    with pytest.raises(EmptyDataset):
        mlp.train(mlp.zero_model(), x[:0], y[:0], x, y)
    with pytest.raises(EmptyDataset):
        mlp.train(mlp.zero_model(), x, y, x[:0], y[:0])


@pytest.mark.parametrize("kwargs", [
    {"learning_rate": 0}, {"batch_size": 0}, {"max_epochs": 0}, {"threshold": 0}, {"threshold": 1},
])
def test_train_config_validation(kwargs):
    with pytest.raises(ValueError):
        mlp.TrainConfig(**kwargs)
