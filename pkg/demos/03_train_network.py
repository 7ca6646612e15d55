"""Train the 12-64-64-64-64-1 network and look at its learning curves.

Takes around half a minute. If matplotlib is installed the loss and
accuracy curves are saved to ``curves.png``.
"""
# %%
import time

from compat import metrics, mlp, synthgen

pairs = synthgen.build_dataset(300, seed=42)
train, val, test = synthgen.split_dataset(pairs, 0.2, 0.2, seed=42)

# %%
config = mlp.TrainConfig()  # lr 0.01, batch 32, patience 5
start = time.perf_counter()
model, history = mlp.train(
    mlp.init_model(seed=config.seed), train.X, train.y, val.X, val.y, config,
    log=lambda r: print(f"epoch {r.epoch:3d}  val_loss {r.val_loss:.4f}  val_acc {r.val_accuracy:.4f}"),
)
print(f"stopped after {history.stopped_epoch} epochs ({time.perf_counter() - start:.0f}s), "
      f"best epoch {history.best_epoch}, val loss {history.best_val_loss:.4f}")

# %%
rep = metrics.classification_report(mlp.predict_label(model, test.X), test.y)
print(rep.to_text())

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    epochs = history.column("epoch")
    fig, (ax_acc, ax_loss) = plt.subplots(1, 2, figsize=(10, 4))
    ax_acc.plot(epochs, history.column("train_accuracy"), label="train")
    ax_acc.plot(epochs, history.column("val_accuracy"), label="validation")
    ax_acc.set(xlabel="epoch", ylabel="accuracy")
    ax_loss.plot(epochs, history.column("train_loss"), label="train")
    ax_loss.plot(epochs, history.column("val_loss"), label="validation")
    ax_loss.set(xlabel="epoch", ylabel="binary cross-entropy")
    ax_loss.legend()
    fig.tight_layout()
    fig.savefig("curves.png", dpi=120)
    print("wrote curves.png")
