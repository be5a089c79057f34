"""Feature standardization and PCA reduction.

Both transforms are fit on a training matrix (rows = utterances) and
applied to held-out rows, so cross-validation can keep test utterances
out of every fit. Moments are population moments throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ZScoreModel:
    """Per-coordinate standardization: (x - mu) / sigma."""

    mu: np.ndarray
    sigma: np.ndarray

    def to_dict(self) -> dict:
        return {"mu": self.mu.tolist(), "sigma": self.sigma.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "ZScoreModel":
        return cls(mu=np.asarray(d["mu"], float), sigma=np.asarray(d["sigma"], float))


def zscore_fit(X) -> ZScoreModel:
    """Fit per-coordinate mean and population standard deviation."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[0] < 1 or not np.all(np.isfinite(X)):
        raise ValueError("zscore_fit needs a finite matrix with >= 1 row")
    return ZScoreModel(mu=X.mean(axis=0), sigma=X.std(axis=0))


def zscore_apply(model: ZScoreModel, x) -> np.ndarray:
    """Standardize rows; coordinates with sigma = 0 map to 0."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.mu.size:
        raise ValueError(
            f"dimension mismatch: data has {x.shape[-1]}, model has {model.mu.size}"
        )
    centered = x - model.mu
    return np.divide(
        centered,
        model.sigma,
        out=np.zeros_like(centered),
        where=model.sigma > 0,
    )


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Orthonormal projection onto the leading principal components."""

    mean: np.ndarray
    components: np.ndarray  # (k, d), rows orthonormal
    explained_ratio: np.ndarray  # (k,), fractions of total variance

    @property
    def k(self) -> int:
        return self.components.shape[0]

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "components": self.components.tolist(),
            "explained_ratio": self.explained_ratio.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PcaModel":
        return cls(
            mean=np.asarray(d["mean"], float),
            components=np.asarray(d["components"], float),
            explained_ratio=np.asarray(d["explained_ratio"], float),
        )


def pca_fit(X, threshold: float = 0.99) -> PcaModel:
    """Principal components keeping the minimal count whose cumulative
    variance share reaches `threshold`.

    Eigendecomposes the population covariance; when there are more
    coordinates than rows the Gram matrix route gives the same nonzero
    spectrum at far lower cost. Component signs are fixed by making each
    row's largest-magnitude entry positive, so refits are reproducible.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("pca_fit needs a 2-D matrix with >= 2 rows")
    if not np.all(np.isfinite(X)):
        raise ValueError("pca_fit needs finite data")
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    n, d = X.shape
    mean = X.mean(axis=0)
    Xc = X - mean
    if d <= n:
        cov = (Xc.T @ Xc) / n
        eigvals, eigvecs = np.linalg.eigh(cov)
        eigvals = eigvals[::-1]
        comps = eigvecs[:, ::-1].T
    else:
        gram = (Xc @ Xc.T) / n
        eigvals, eigvecs = np.linalg.eigh(gram)
        eigvals = eigvals[::-1]
        eigvecs = eigvecs[:, ::-1]
        keep = eigvals > max(eigvals[0], 0.0) * 1e-12
        eigvals = eigvals[keep]
        comps = (Xc.T @ eigvecs[:, keep]) / np.sqrt(n * eigvals)
        comps = comps.T
    eigvals = np.maximum(eigvals, 0.0)
    total = eigvals.sum()
    if total <= 0.0:
        raise ValueError("pca_fit on zero-variance data")
    ratios = eigvals / total
    # 1e-12 slack absorbs float dust when the share hits the threshold exactly.
    k = int(np.searchsorted(np.cumsum(ratios), threshold - 1e-12) + 1)
    k = min(k, len(ratios))
    comps = comps[:k].copy()
    for row in comps:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaModel(mean=mean, components=comps, explained_ratio=ratios[:k].copy())


def pca_transform(model: PcaModel, x) -> np.ndarray:
    """Project rows onto the retained components."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.mean.size:
        raise ValueError(
            f"dimension mismatch: data has {x.shape[-1]}, model has {model.mean.size}"
        )
    return (x - model.mean) @ model.components.T


def pca_inverse(model: PcaModel, z) -> np.ndarray:
    """Map projected rows back into the original space (lossy for k < d)."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != model.k:
        raise ValueError(
            f"dimension mismatch: data has {z.shape[-1]}, model keeps {model.k}"
        )
    return z @ model.components + model.mean


def save_preprocess_models(path, zscore: ZScoreModel = None, pca: PcaModel = None):
    """Serialize fitted models to one JSON document."""
    doc = {}
    if zscore is not None:
        doc["zscore"] = zscore.to_dict()
    if pca is not None:
        doc["pca"] = pca.to_dict()
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)


def load_preprocess_models(path):
    """Inverse of save_preprocess_models; returns (zscore, pca), either None."""
    with open(path) as fh:
        doc = json.load(fh)
    zscore = ZScoreModel.from_dict(doc["zscore"]) if "zscore" in doc else None
    pca = PcaModel.from_dict(doc["pca"]) if "pca" in doc else None
    return zscore, pca
