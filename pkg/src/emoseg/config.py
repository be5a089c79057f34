"""Experiment configuration.

One frozen dataclass covers extraction (segmentation, histogram, framing)
and evaluation (PCA threshold, SVM C, preprocessing scope). The JSON
form round-trips through to_dict/from_dict and is embedded verbatim in
evaluation reports.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .features import histogram_bin_count
from .segmentation import SegmentationScheme

MAX_SEGMENTS = 10
SCOPES = ("per-fold", "global")

_KNOWN_KEYS = {
    "scheme",
    "include_hist",
    "hist",
    "pca",
    "svm_c",
    "frame_ms",
    "hop_ms",
    "preprocessing_scope",
}


@dataclass(frozen=True)
class ExperimentConfig:
    scheme: SegmentationScheme = field(default_factory=SegmentationScheme.gti)
    include_hist: bool = False
    hist_a: float = 50.0
    hist_b: float = 500.0
    hist_h: float = 50.0
    pca: Optional[float] = None
    svm_c: float = 1.0
    frame_ms: float = 25.0
    hop_ms: float = 10.0
    preprocessing_scope: str = "per-fold"

    def __post_init__(self):
        if self.scheme.n_segments > MAX_SEGMENTS:
            raise ValueError(
                f"segment count must lie in [1, {MAX_SEGMENTS}], "
                f"got {self.scheme.n_segments}"
            )
        histogram_bin_count(self.hist_a, self.hist_b, self.hist_h)
        if self.pca is not None and not 0.0 < self.pca <= 1.0:
            raise ValueError(f"pca threshold must lie in (0, 1], got {self.pca}")
        if self.svm_c <= 0:
            raise ValueError(f"svm_c must be positive, got {self.svm_c}")
        if not self.frame_ms > self.hop_ms > 0:
            raise ValueError(
                f"require frame_ms > hop_ms > 0, got {self.frame_ms}, {self.hop_ms}"
            )
        if self.preprocessing_scope not in SCOPES:
            raise ValueError(
                f"preprocessing_scope must be one of {SCOPES}, "
                f"got {self.preprocessing_scope!r}"
            )

    def to_dict(self) -> dict:
        scheme = "gti" if self.scheme.kind == "gti" else {"rti": self.scheme.n}
        return {
            "scheme": scheme,
            "include_hist": self.include_hist,
            "hist": {"a": self.hist_a, "b": self.hist_b, "h": self.hist_h},
            "pca": self.pca,
            "svm_c": self.svm_c,
            "frame_ms": self.frame_ms,
            "hop_ms": self.hop_ms,
            "preprocessing_scope": self.preprocessing_scope,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = set(d) - _KNOWN_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        if "scheme" in d:
            kwargs["scheme"] = _parse_scheme(d["scheme"])
        if "include_hist" in d:
            kwargs["include_hist"] = bool(d["include_hist"])
        hist = d.get("hist", {})
        if not isinstance(hist, dict) or set(hist) - {"a", "b", "h"}:
            raise ValueError('config "hist" must be an object with keys a, b, h')
        for src, dst in (("a", "hist_a"), ("b", "hist_b"), ("h", "hist_h")):
            if src in hist:
                kwargs[dst] = float(hist[src])
        if "pca" in d:
            kwargs["pca"] = None if d["pca"] is None else float(d["pca"])
        for key in ("svm_c", "frame_ms", "hop_ms"):
            if key in d:
                kwargs[key] = float(d[key])
        if "preprocessing_scope" in d:
            kwargs["preprocessing_scope"] = str(d["preprocessing_scope"])
        return cls(**kwargs)

    def extraction_dict(self) -> dict:
        """The subset of the config that determines extracted features."""
        full = self.to_dict()
        return {
            k: full[k]
            for k in ("scheme", "include_hist", "hist", "frame_ms", "hop_ms")
        }

    def extraction_hash(self) -> str:
        """Stable digest of the extraction-relevant settings."""
        blob = json.dumps(self.extraction_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def _parse_scheme(value) -> SegmentationScheme:
    if value == "gti":
        return SegmentationScheme.gti()
    if isinstance(value, dict) and set(value) == {"rti"}:
        return SegmentationScheme.rti(int(value["rti"]))
    raise ValueError(f'scheme must be "gti" or {{"rti": n}}, got {value!r}')


def load_config(path) -> ExperimentConfig:
    """Read an ExperimentConfig from a JSON file."""
    with open(path) as fh:
        return ExperimentConfig.from_dict(json.load(fh))
