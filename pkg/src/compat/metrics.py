"""Confusion counts and the per-class classification report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, LengthMismatch

MINORITY_NOTE_SHARE = 0.005


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with class 1 ("compatible") as the positive class."""

    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def swapped(self) -> "ConfusionMatrix":
        """The same counts seen with class 0 as the positive class."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, tn=self.tp, fn=self.fp)


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support_fraction: float
    support: int
    degenerate: list[str] = field(default_factory=list)


@dataclass
class ClassificationReport:
    per_class: dict[int, ClassMetrics]
    accuracy: float
    total: int

    @property
    def minority_class(self) -> int:
        return min((0, 1), key=lambda c: (self.per_class[c].support, c))

    def to_dict(self) -> dict:
        return {
            "per_class": {
                str(c): {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support_fraction": m.support_fraction,
                    "support": m.support,
                    "degenerate": list(m.degenerate),
                }
                for c, m in sorted(self.per_class.items(), reverse=True)
            },
            "accuracy": self.accuracy,
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        return format_report(self)


def confusion(predictions, labels) -> ConfusionMatrix:
    p = np.asarray(predictions).reshape(-1)
    y = np.asarray(labels).reshape(-1)
    if len(p) != len(y):
        raise LengthMismatch(f"{len(p)} predictions vs {len(y)} labels")
    if len(p) == 0:
        raise EmptyInput("no predictions to score")
    for name, arr in (("predictions", p), ("labels", y)):
        if not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name} must be 0 or 1")
    p = p == 1
    y = y == 1
    return ConfusionMatrix(
        tp=int(np.sum(p & y)),
        fp=int(np.sum(p & ~y)),
        tn=int(np.sum(~p & ~y)),
        fn=int(np.sum(~p & y)),
    )


def _ratio(num, den, name, flags):
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def _positive_class_metrics(cm: ConfusionMatrix) -> ClassMetrics:
    flags: list[str] = []
    precision = _ratio(cm.tp, cm.tp + cm.fp, "precision", flags)
    recall = _ratio(cm.tp, cm.tp + cm.fn, "recall", flags)
    f1 = _ratio(2 * precision * recall, precision + recall, "f1", flags)
    support = cm.tp + cm.fn
    return ClassMetrics(precision, recall, f1, support / cm.total, support, flags)


def accuracy(cm: ConfusionMatrix) -> float:
    if cm.total < 1:
        raise EmptyInput("empty confusion matrix")
    return (cm.tp + cm.tn) / cm.total


def report(cm: ConfusionMatrix) -> ClassificationReport:
    """Precision, recall, F1 and support for both classes, plus accuracy.

    Zero denominators give 0 and the metric's name is added to that class's
    ``degenerate`` list.
    """
    if cm.total < 1:
        raise EmptyInput("empty confusion matrix")
    return ClassificationReport(
        per_class={1: _positive_class_metrics(cm), 0: _positive_class_metrics(cm.swapped())},
        accuracy=accuracy(cm),
        total=cm.total,
    )


def classification_report(predictions, labels) -> ClassificationReport:
    return report(confusion(predictions, labels))


HEADERS = ("Class", "Precision", "Recall", "F1-Score", "Support", "Count")


def format_report(rep: ClassificationReport) -> str:
    """Aligned text table, class 1 first, support printed as a percentage.

    Example::

        Class  Precision  Recall  F1-Score  Support  Count
            1       1.00    1.00      1.00  98.900%   9890
            0       0.95    0.88      0.92   1.100%    110

        accuracy                             0.9982  10000
    """
    widths = [len(h) for h in HEADERS]
    rows = []
    for c in (1, 0):
        m = rep.per_class[c]
        rows.append((
            str(c),
            f"{m.precision:.2f}",
            f"{m.recall:.2f}",
            f"{m.f1:.2f}",
            f"{100 * m.support_fraction:.3f}%",
            str(m.support),
        ))
    for row in rows:
        widths = [max(w, len(v)) for w, v in zip(widths, row)]
    widths[-1] = max(widths[-1], len(str(rep.total)))

    def line(cells):
        return "  ".join(v.rjust(w) for v, w in zip(cells, widths)).rstrip()

    out = [line(HEADERS)]
    out += [line(r) for r in rows]
    out.append("")
    lead = sum(widths[:4]) + 2 * 3
    out.append(
        "accuracy".ljust(lead) + "  " + f"{rep.accuracy:.4f}".rjust(widths[4]) + "  " + str(rep.total).rjust(widths[5])
    )
    notes = []
    for c in (1, 0):
        m = rep.per_class[c]
        if m.degenerate:
            notes.append(f"note: class {c} has zero denominator for {', '.join(m.degenerate)}; reported as 0")
    minority = rep.per_class[rep.minority_class]
    if minority.support_fraction < MINORITY_NOTE_SHARE:
        notes.append(
            f"note: class {rep.minority_class} support is {100 * minority.support_fraction:.3f}%, "
            f"below {100 * MINORITY_NOTE_SHARE:.1f}%; its metrics rest on very few samples"
        )
    if notes:
        out.append("")
        out += notes
    return "\n".join(out) + "\n"
