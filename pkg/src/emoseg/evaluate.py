"""Corpus evaluation: manifests, leave-one-out cross-validation, reports.

A manifest row names a WAV file, its emotion label, and a speaker id.
Evaluation is leave-one-utterance-out: by default standardization and
PCA are refit inside every fold so the held-out utterance never touches
any fit step; a "global" scope that fits preprocessing once on the full
corpus is available for comparison runs.
"""

from __future__ import annotations

import csv
import re
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .audio import load_wav
from .config import ExperimentConfig
from .features import UtteranceFeatureVector, assemble
from .preprocess import pca_fit, pca_transform, zscore_apply, zscore_fit
from .svm import predict, train_multiclass

EMODB_CLASSES = (
    "anger",
    "boredom",
    "disgust",
    "fear",
    "happiness",
    "neutral",
    "sadness",
)

_EMODB_CODES = {
    "W": "anger",
    "L": "boredom",
    "E": "disgust",
    "A": "fear",
    "F": "happiness",
    "T": "sadness",
    "N": "neutral",
}

# speaker (2 digits), text code (letter + 2 digits), emotion letter, version.
_EMODB_NAME = re.compile(r"^(\d{2})([a-z]\d{2})([WLEAFTN])([a-z0-9])\.wav$")


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    label: str
    speaker: str = ""


def emodb_parse_filename(name: str) -> Optional[tuple[str, str]]:
    """Decode an Emo-DB style filename into (label, speaker), or None."""
    m = _EMODB_NAME.match(name)
    if m is None:
        return None
    return _EMODB_CODES[m.group(3)], m.group(1)


def build_emodb_manifest(directory) -> tuple[list[ManifestEntry], list[str]]:
    """Scan a directory of Emo-DB recordings.

    Returns (entries, skipped) where skipped lists WAV names whose
    filename does not follow the corpus convention. Entries are sorted by
    filename for reproducible manifests.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"no such directory: {directory}")
    entries = []
    skipped = []
    for wav in sorted(directory.glob("*.wav")):
        decoded = emodb_parse_filename(wav.name)
        if decoded is None:
            skipped.append(wav.name)
            continue
        label, speaker = decoded
        # Absolute paths keep the manifest valid wherever it is written.
        entries.append(
            ManifestEntry(path=str(wav.resolve()), label=label, speaker=speaker)
        )
    return entries, skipped


def write_manifest(path, entries: Sequence[ManifestEntry]):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["path", "label", "speaker"])
        for e in entries:
            writer.writerow([e.path, e.label, e.speaker])


def parse_manifest(path, classes: Optional[Sequence[str]] = None) -> list[ManifestEntry]:
    """Read a path,label,speaker CSV.

    Relative paths resolve against the manifest's directory. When
    `classes` is given, labels outside it are rejected; duplicate paths
    are always rejected.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows or rows[0] != ["path", "label", "speaker"]:
        raise ValueError(f"{path}: manifest header must be path,label,speaker")
    entries = []
    seen = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ValueError(f"{path}: row {lineno} has {len(row)} fields, expected 3")
        wav, label, speaker = (c.strip() for c in row)
        if not wav or not label:
            raise ValueError(f"{path}: row {lineno} is missing a path or label")
        if classes is not None and label not in classes:
            raise ValueError(
                f"{path}: row {lineno} label {label!r} not in {tuple(classes)}"
            )
        if wav in seen:
            raise ValueError(f"{path}: duplicate path {wav!r} at row {lineno}")
        seen.add(wav)
        resolved = Path(wav)
        if not resolved.is_absolute():
            resolved = path.parent / resolved
        entries.append(ManifestEntry(path=str(resolved), label=label, speaker=speaker))
    if not entries:
        raise ValueError(f"{path}: manifest holds no utterances")
    return entries


def extract_features(
    entries: Sequence[ManifestEntry],
    config: ExperimentConfig,
    skip_bad_utterances: bool = False,
) -> list[UtteranceFeatureVector]:
    """Extract one labeled feature vector per manifest entry.

    A failing utterance aborts the run with its path in the message
    unless `skip_bad_utterances` is set, in which case it is dropped with
    a warning.
    """
    vectors = []
    for e in entries:
        try:
            clip = load_wav(e.path)
            vec = assemble(
                clip,
                config.scheme,
                include_hist=config.include_hist,
                hist_a=config.hist_a,
                hist_b=config.hist_b,
                hist_h=config.hist_h,
                frame_ms=config.frame_ms,
                hop_ms=config.hop_ms,
                label=e.label,
            )
        except (ValueError, FileNotFoundError) as exc:
            if skip_bad_utterances:
                warnings.warn(f"skipping {e.path}: {exc}")
                continue
            raise ValueError(f"extraction failed for {e.path}: {exc}") from exc
        vectors.append(vec)
    if not vectors:
        raise ValueError("no utterance produced features")
    layout = vectors[0].layout
    for v in vectors:
        if v.layout != layout:
            raise ValueError(f"inconsistent feature layout at {v.source_id}")
    return vectors


def compute_metrics(confusion) -> tuple[float, float, np.ndarray]:
    """(weighted accuracy, unweighted accuracy, per-class recall).

    WA is trace/total; UA is the mean of per-class recalls, which weighs
    every class equally regardless of its instance count. Rows with no
    instances get recall 0.
    """
    cm = np.asarray(confusion, dtype=np.float64)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
        raise ValueError(f"confusion matrix must be square, got {cm.shape}")
    if (cm < 0).any():
        raise ValueError("confusion matrix must be non-negative")
    total = cm.sum()
    if total <= 0:
        raise ValueError("confusion matrix is empty")
    row_sums = cm.sum(axis=1)
    recalls = np.divide(
        np.diag(cm), row_sums, out=np.zeros(cm.shape[0]), where=row_sums > 0
    )
    wa = float(np.trace(cm) / total)
    ua = float(recalls.mean())
    return wa, ua, recalls


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """LOOCV outcome: confusion (rows true, cols predicted) and summaries."""

    classes: tuple
    confusion: np.ndarray
    wa: float
    ua: float
    per_class_recall: np.ndarray
    dims_before: int
    dims_after: int
    config: ExperimentConfig
    predictions: tuple

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes),
            "confusion": self.confusion.astype(int).tolist(),
            "wa": self.wa,
            "ua": self.ua,
            "per_class_recall": self.per_class_recall.tolist(),
            "dims_before": self.dims_before,
            "dims_after": self.dims_after,
            "config": self.config.to_dict(),
            "predictions": [dict(p) for p in self.predictions],
        }


def _modal_dim(ks: Sequence[int]) -> int:
    """Most common retained dimension; ties break toward the smaller."""
    counts = Counter(ks)
    return min(sorted(counts), key=lambda k: (-counts[k], k))


def loocv(
    entries: Sequence[ManifestEntry],
    config: ExperimentConfig,
    skip_bad_utterances: bool = False,
    features: Optional[Sequence[UtteranceFeatureVector]] = None,
) -> EvaluationReport:
    """Leave-one-utterance-out evaluation of one configuration.

    Pass `features` to reuse vectors already extracted with the same
    extraction settings (labels ride along on the vectors). Classes with
    a single instance stay in the report but their one fold trains
    without them, which is flagged with a warning.
    """
    if features is None:
        features = extract_features(
            entries, config, skip_bad_utterances=skip_bad_utterances
        )
    features = list(features)
    if any(v.label is None for v in features):
        raise ValueError("every feature vector needs a label for evaluation")
    labels = [v.label for v in features]
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError("evaluation needs at least two classes")
    if len(features) < 3:
        raise ValueError("leave-one-out needs at least three utterances")
    class_counts = Counter(labels)
    for c in classes:
        if class_counts[c] == 1:
            warnings.warn(
                f"class {c!r} has a single utterance; its fold trains without it"
            )
    X = np.vstack([v.values for v in features])
    n, dims_before = X.shape

    fold_dims = []
    predicted = []
    if config.preprocessing_scope == "global":
        scaler = zscore_fit(X)
        Xz = zscore_apply(scaler, X)
        if config.pca is not None:
            reducer = pca_fit(Xz, threshold=config.pca)
            Xp = pca_transform(reducer, Xz)
            fold_dims.append(reducer.k)
        else:
            Xp = Xz
        for i in range(n):
            mask = np.arange(n) != i
            model = train_multiclass(
                Xp[mask], [labels[j] for j in range(n) if j != i], C=config.svm_c
            )
            predicted.append(predict(model, Xp[i]))
    else:
        for i in range(n):
            mask = np.arange(n) != i
            scaler = zscore_fit(X[mask])
            Xtr = zscore_apply(scaler, X[mask])
            xte = zscore_apply(scaler, X[i])
            if config.pca is not None:
                reducer = pca_fit(Xtr, threshold=config.pca)
                Xtr = pca_transform(reducer, Xtr)
                xte = pca_transform(reducer, xte)
                fold_dims.append(reducer.k)
            model = train_multiclass(
                Xtr, [labels[j] for j in range(n) if j != i], C=config.svm_c
            )
            predicted.append(predict(model, xte))

    confusion = np.zeros((len(classes), len(classes)), dtype=int)
    for true_label, pred_label in zip(labels, predicted):
        confusion[classes.index(true_label), classes.index(pred_label)] += 1
    wa, ua, recalls = compute_metrics(confusion)
    dims_after = _modal_dim(fold_dims) if fold_dims else dims_before
    predictions = tuple(
        {"id": v.source_id, "true": v.label, "predicted": p}
        for v, p in zip(features, predicted)
    )
    return EvaluationReport(
        classes=classes,
        confusion=confusion,
        wa=wa,
        ua=ua,
        per_class_recall=recalls,
        dims_before=dims_before,
        dims_after=dims_after,
        config=config,
        predictions=predictions,
    )


def ua_delta_report(
    baseline: EvaluationReport, candidate: EvaluationReport
) -> list[dict]:
    """Per-class recall change from baseline to candidate.

    Rows are sorted by delta, largest gain first (ties by class name);
    values are recall fractions.
    """
    if baseline.classes != candidate.classes:
        raise ValueError(
            f"class sets differ: {baseline.classes} vs {candidate.classes}"
        )
    rows = [
        {
            "class": c,
            "baseline": float(baseline.per_class_recall[k]),
            "candidate": float(candidate.per_class_recall[k]),
            "delta": float(candidate.per_class_recall[k] - baseline.per_class_recall[k]),
        }
        for k, c in enumerate(baseline.classes)
    ]
    rows.sort(key=lambda r: (-r["delta"], r["class"]))
    return rows


def run_experiment_grid(
    entries: Sequence[ManifestEntry],
    configs: Sequence[ExperimentConfig],
    skip_bad_utterances: bool = False,
) -> dict:
    """Evaluate several configurations over one manifest.

    Features are extracted once per distinct extraction setting and
    reused across configs that differ only in PCA, C, or scope. Returns
    {"rows": [{config, dims_before, dims_after, wa, ua}, ...]} in input
    order.
    """
    if not configs:
        raise ValueError("grid needs at least one configuration")
    cache: dict[str, list[UtteranceFeatureVector]] = {}
    rows = []
    for cfg in configs:
        key = cfg.extraction_hash()
        if key not in cache:
            cache[key] = extract_features(
                entries, cfg, skip_bad_utterances=skip_bad_utterances
            )
        report = loocv(entries, cfg, features=cache[key])
        rows.append(
            {
                "config": cfg.to_dict(),
                "dims_before": report.dims_before,
                "dims_after": report.dims_after,
                "wa": report.wa,
                "ua": report.ua,
            }
        )
    return {"rows": rows}
