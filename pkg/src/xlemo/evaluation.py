"""Classification metrics, agreement statistics, and evaluation reports.

Per-class precision/recall/F1 are one-vs-rest with the 0/0 convention of
scoring 0. The summary statistic is the support-weighted mean F1. Reports
carry enough metadata to reproduce the run and serialize to text, TSV,
or JSON; the JSON form round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from xlemo.errors import InputError, NumericError


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int


def _safe_div(num: float, den: float) -> float:
    return num / den if den != 0.0 else 0.0


def infer_labels(gold: list[str], pred: list[str]) -> tuple[str, ...]:
    return tuple(sorted(set(gold) | set(pred)))


def per_class_scores(
    gold: list[str], pred: list[str], labels: tuple[str, ...] | None = None
) -> dict[str, ClassScores]:
    """One-vs-rest precision, recall, and F1 for every label."""
    if len(gold) != len(pred):
        raise InputError("gold and predicted lists differ in length: %d vs %d" % (len(gold), len(pred)))
    if not gold:
        raise InputError("cannot score an empty prediction list")
    if labels is None:
        labels = infer_labels(gold, pred)
    known = set(labels)
    for seq_name, seq in (("gold", gold), ("predicted", pred)):
        unknown = sorted(set(seq) - known)
        if unknown:
            raise InputError("%s labels not in the label set: %s" % (seq_name, ", ".join(unknown)))

    out: dict[str, ClassScores] = {}
    for label in labels:
        tp = sum(1 for g, p in zip(gold, pred) if g == label and p == label)
        fp = sum(1 for g, p in zip(gold, pred) if g != label and p == label)
        fn = sum(1 for g, p in zip(gold, pred) if g == label and p != label)
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        f1 = _safe_div(2.0 * precision * recall, precision + recall)
        out[label] = ClassScores(precision=precision, recall=recall, f1=f1, support=tp + fn)
    return out


def weighted_avg_f1(f1_by_label: dict[str, float], support_by_label: dict[str, int]) -> float:
    """Mean F1 weighted by gold support."""
    if set(f1_by_label) != set(support_by_label):
        raise InputError("f1 and support labels differ")
    total = sum(support_by_label.values())
    if total == 0:
        raise InputError("all supports are zero; weighted average is undefined")
    return sum(f1_by_label[label] * support_by_label[label] for label in f1_by_label) / total


def confusion_matrix(gold: list[str], pred: list[str], labels: tuple[str, ...]) -> np.ndarray:
    """Counts with gold labels on rows and predicted labels on columns."""
    index = {label: i for i, label in enumerate(labels)}
    matrix = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for g, p in zip(gold, pred):
        matrix[index[g], index[p]] += 1
    return matrix


def fleiss_kappa(matrix: np.ndarray) -> float:
    """Chance-corrected agreement for a fixed rater count per item.

    Rows are items, columns are categories, entries are how many raters
    chose that category. Every row must sum to the same rater count n >= 2.
    """
    counts = np.asarray(matrix, dtype=np.float64)
    if counts.ndim != 2 or counts.shape[0] < 1 or counts.shape[1] < 2:
        raise InputError("agreement matrix must be 2-D with at least 2 categories")
    if np.any(counts < 0) or np.any(counts != np.floor(counts)):
        raise InputError("agreement matrix entries must be non-negative integers")
    row_sums = counts.sum(axis=1)
    n = row_sums[0]
    if n < 2:
        raise InputError("need at least 2 raters per item, got %d" % int(n))
    if np.any(row_sums != n):
        raise InputError("every item must have the same number of ratings")

    p_item = (np.sum(counts * counts, axis=1) - n) / (n * (n - 1.0))
    p_bar = float(np.mean(p_item))
    category_share = counts.sum(axis=0) / counts.sum()
    p_expected = float(np.sum(category_share * category_share))
    if p_expected >= 1.0:
        if p_bar >= 1.0:
            return 1.0
        raise NumericError("expected agreement is 1 but observed agreement is not; kappa undefined")
    return (p_bar - p_expected) / (1.0 - p_expected)


@dataclass
class EvalReport:
    """Scores for one method on one test set, plus reproduction metadata."""

    labels: tuple[str, ...]
    scores: dict[str, ClassScores]
    weighted_f1: float
    confusion: np.ndarray
    language: str = "und"
    method: str = "unknown"
    seed: int | None = None
    extra: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.labels = tuple(self.labels)
        self.confusion = np.asarray(self.confusion, dtype=np.int64)
        if set(self.scores) != set(self.labels):
            raise InputError("score labels do not match the label set")
        if self.confusion.shape != (len(self.labels), len(self.labels)):
            raise InputError("confusion matrix shape does not match the label set")
        for i, label in enumerate(self.labels):
            if int(self.confusion[i].sum()) != self.scores[label].support:
                raise InputError("confusion row sum disagrees with support for %r" % label)


def build_report(
    gold: list[str],
    pred: list[str],
    labels: tuple[str, ...] | None = None,
    language: str = "und",
    method: str = "unknown",
    seed: int | None = None,
) -> EvalReport:
    if labels is None:
        labels = infer_labels(gold, pred)
    scores = per_class_scores(gold, pred, labels)
    weighted = weighted_avg_f1(
        {label: s.f1 for label, s in scores.items()},
        {label: s.support for label, s in scores.items()},
    )
    return EvalReport(
        labels=labels,
        scores=scores,
        weighted_f1=weighted,
        confusion=confusion_matrix(gold, pred, labels),
        language=language,
        method=method,
        seed=seed,
    )


def summary_row(report: EvalReport) -> str:
    """The method name padded to a fixed column, then 2-decimal F1 values.

    Per-class F1 in label order followed by the weighted average, joined
    by single spaces.
    """
    values = [report.scores[label].f1 for label in report.labels] + [report.weighted_f1]
    return "%-30s %s" % (report.method, " ".join("%.2f" % v for v in values))


def _text_report(report: EvalReport) -> str:
    lines = [
        "evaluation report",
        "language: %s" % report.language,
        "seed: %s" % ("none" if report.seed is None else report.seed),
        "",
        "%-30s %s" % ("method", " ".join(report.labels + ("w-avg",))),
        summary_row(report),
        "",
        "class scores",
        "%-12s %10s %10s %10s %8s" % ("label", "precision", "recall", "f1", "support"),
    ]
    for label in report.labels:
        s = report.scores[label]
        lines.append("%-12s %10.6f %10.6f %10.6f %8d" % (label, s.precision, s.recall, s.f1, s.support))
    lines.append("")
    lines.append("confusion matrix (rows: gold, columns: predicted)")
    header = "%-12s" % "" + "".join("%8s" % label for label in report.labels)
    lines.append(header)
    for i, label in enumerate(report.labels):
        lines.append("%-12s" % label + "".join("%8d" % v for v in report.confusion[i]))
    return "\n".join(lines) + "\n"


def _tsv_report(report: EvalReport) -> str:
    lines = [
        "meta\tlanguage\t%s" % report.language,
        "meta\tmethod\t%s" % report.method,
        "meta\tseed\t%s" % ("none" if report.seed is None else report.seed),
    ]
    for label in report.labels:
        s = report.scores[label]
        lines.append(
            "class\t%s\t%s\t%s\t%s\t%d" % (label, repr(s.precision), repr(s.recall), repr(s.f1), s.support)
        )
    lines.append("weighted_f1\t%s" % repr(report.weighted_f1))
    for i, label in enumerate(report.labels):
        lines.append("confusion\t%s\t%s" % (label, "\t".join(str(int(v)) for v in report.confusion[i])))
    return "\n".join(lines) + "\n"


def _json_report(report: EvalReport) -> str:
    payload = {
        "language": report.language,
        "method": report.method,
        "seed": report.seed,
        "labels": list(report.labels),
        "scores": {
            label: {
                "precision": report.scores[label].precision,
                "recall": report.scores[label].recall,
                "f1": report.scores[label].f1,
                "support": report.scores[label].support,
            }
            for label in report.labels
        },
        "weighted_f1": report.weighted_f1,
        "confusion": [[int(v) for v in row] for row in report.confusion],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit_report(report: EvalReport, format: str = "text") -> str:
    """Render a report; identical reports always render to identical bytes."""
    if format == "text":
        return _text_report(report)
    if format == "tsv":
        return _tsv_report(report)
    if format == "json":
        return _json_report(report)
    raise InputError("unknown report format %r" % format)


def parse_report(text: str, format: str = "json") -> EvalReport:
    """Rebuild a report emitted as JSON or TSV."""
    if format == "json":
        payload = json.loads(text)
        labels = tuple(payload["labels"])
        scores = {
            label: ClassScores(
                precision=payload["scores"][label]["precision"],
                recall=payload["scores"][label]["recall"],
                f1=payload["scores"][label]["f1"],
                support=payload["scores"][label]["support"],
            )
            for label in labels
        }
        return EvalReport(
            labels=labels,
            scores=scores,
            weighted_f1=payload["weighted_f1"],
            confusion=np.array(payload["confusion"], dtype=np.int64),
            language=payload["language"],
            method=payload["method"],
            seed=payload["seed"],
        )
    if format == "tsv":
        meta: dict[str, str] = {}
        scores = {}
        labels: list[str] = []
        weighted = None
        confusion_rows: dict[str, list[int]] = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            parts = line.split("\t")
            if parts[0] == "meta":
                meta[parts[1]] = parts[2]
            elif parts[0] == "class":
                labels.append(parts[1])
                scores[parts[1]] = ClassScores(
                    precision=float(parts[2]), recall=float(parts[3]), f1=float(parts[4]), support=int(parts[5])
                )
            elif parts[0] == "weighted_f1":
                weighted = float(parts[1])
            elif parts[0] == "confusion":
                confusion_rows[parts[1]] = [int(v) for v in parts[2:]]
            else:
                raise InputError("unknown report row tag %r" % parts[0])
        if weighted is None or not labels:
            raise InputError("incomplete report")
        seed_raw = meta.get("seed", "none")
        return EvalReport(
            labels=tuple(labels),
            scores=scores,
            weighted_f1=weighted,
            confusion=np.array([confusion_rows[label] for label in labels], dtype=np.int64),
            language=meta.get("language", "und"),
            method=meta.get("method", "unknown"),
            seed=None if seed_raw == "none" else int(seed_raw),
        )
    raise InputError("unknown report format %r" % format)
