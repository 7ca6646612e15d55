"""Reading a classification report, and scoring single pairs.

Uses an untrained (all-zero) model for prediction so it runs instantly;
swap in ``persistence.load_model("model.json")`` for a trained one.
"""
# %%
import numpy as np

from compat import metrics, mlp

# Table-style report for a heavily imbalanced test set: the rare class carries
# all the information, the common class scores near 1.00 regardless.
rng = np.random.default_rng(0)
labels = (rng.random(5000) < 0.02).astype(int)
preds = labels.copy()
flip = rng.choice(5000, 40, replace=False)
preds[flip] = 1 - preds[flip]
print(metrics.classification_report(preds, labels).to_text())

# %%
cm = metrics.confusion(preds, labels)
print(cm, "accuracy", metrics.accuracy(cm))
print("same counts with class 0 as positive:", cm.swapped())

# %%
model = mlp.zero_model()
x = np.array([5] * 6 + [5] * 6, dtype=float)
print("probability:", mlp.forward(model, x), "label:", mlp.predict_label(model, x))
