"""Linear SVM trained in the dual by sequential minimal optimization.

The binary solver sweeps deterministically over examples, pairing each
KKT violator with the partner of largest |E_i - E_j|, so a given training
matrix always yields the same model. Multiclass is one-vs-one with
majority vote; vote ties fall back to summed decision magnitude, then to
the lowest class index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-3
MAX_SWEEPS = 100_000
_ALPHA_EPS = 1e-8


@dataclass(frozen=True, eq=False)
class BinarySvmModel:
    """Linear decision function f(x) = w . x + b for labels in {-1, +1}."""

    w: np.ndarray
    b: float
    C: float
    converged: bool
    sweeps: int

    def decision(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return x @ self.w + self.b

    def to_dict(self) -> dict:
        return {
            "w": self.w.tolist(),
            "b": self.b,
            "C": self.C,
            "converged": self.converged,
            "sweeps": self.sweeps,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BinarySvmModel":
        return cls(
            w=np.asarray(d["w"], float),
            b=float(d["b"]),
            C=float(d["C"]),
            converged=bool(d["converged"]),
            sweeps=int(d["sweeps"]),
        )


def train_binary(
    X,
    y,
    C: float = DEFAULT_C,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> BinarySvmModel:
    """Solve the soft-margin dual for a linear kernel.

    Maximize sum(alpha) - 1/2 sum alpha_i alpha_j y_i y_j <x_i, x_j>
    subject to 0 <= alpha <= C and sum(alpha_i y_i) = 0. Terminates when a
    full sweep changes nothing; `converged` is False only if the sweep cap
    is hit first. The reported bias is refit as the mean over free support
    vectors (0 < alpha < C).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.ndim != 2 or X.shape[0] != y.size:
        raise ValueError(f"X of shape {X.shape} does not match {y.size} labels")
    if not np.all(np.isfinite(X)):
        raise ValueError("training matrix must be finite")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValueError("labels must be -1 or +1")
    if not (y == 1.0).any() or not (y == -1.0).any():
        raise ValueError("training set must contain both classes")
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")

    n = y.size
    K = X @ X.T
    alpha = np.zeros(n)
    b = 0.0
    # F[i] = sum_j alpha_j y_j K[i, j]; E[i] = F[i] + b - y[i].
    F = np.zeros(n)
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        sweeps += 1
        changed = 0
        for i in range(n):
            Ei = F[i] + b - y[i]
            r = Ei * y[i]
            if not ((r < -tol and alpha[i] < C) or (r > tol and alpha[i] > 0)):
                continue
            E = F + b - y
            gap = np.abs(Ei - E)
            gap[i] = -1.0  # exclude the violator itself
            # Largest |E_i - E_j| first; the best partner can be unable to
            # move (clipped range empty, flat direction), and giving up on
            # the violator there stalls short of the optimum, so fall back
            # through the remaining partners until one makes progress.
            for j in np.argsort(-gap, kind="stable"):
                if j == i:
                    continue
                Ej = E[j]
                if y[i] != y[j]:
                    L = max(0.0, alpha[j] - alpha[i])
                    H = min(C, C + alpha[j] - alpha[i])
                else:
                    L = max(0.0, alpha[i] + alpha[j] - C)
                    H = min(C, alpha[i] + alpha[j])
                if L >= H:
                    continue
                eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
                if eta <= 0:
                    continue
                aj_new = np.clip(alpha[j] + y[j] * (Ei - Ej) / eta, L, H)
                d_aj = aj_new - alpha[j]
                if abs(d_aj) < 1e-12:
                    continue
                ai_new = alpha[i] - y[i] * y[j] * d_aj
                d_ai = ai_new - alpha[i]
                b1 = b - Ei - y[i] * d_ai * K[i, i] - y[j] * d_aj * K[i, j]
                b2 = b - Ej - y[i] * d_ai * K[i, j] - y[j] * d_aj * K[j, j]
                if 0.0 < ai_new < C:
                    b = b1
                elif 0.0 < aj_new < C:
                    b = b2
                else:
                    b = 0.5 * (b1 + b2)
                alpha[i] = ai_new
                alpha[j] = aj_new
                F += d_ai * y[i] * K[:, i] + d_aj * y[j] * K[:, j]
                changed += 1
                break
        if changed == 0:
            converged = True
            break

    w = (alpha * y) @ X
    free = (alpha > _ALPHA_EPS) & (alpha < C - _ALPHA_EPS)
    support = alpha > _ALPHA_EPS
    if free.any():
        b_final = float(np.mean(y[free] - X[free] @ w))
    elif support.any():
        b_final = float(np.mean(y[support] - X[support] @ w))
    else:
        b_final = float(b)
    return BinarySvmModel(w=w, b=b_final, C=float(C), converged=converged, sweeps=sweeps)


@dataclass(frozen=True, eq=False)
class MulticlassSvmModel:
    """One-vs-one ensemble over sorted class labels.

    `pairs` holds (i, j, model) with i < j indexing `classes`; each binary
    model maps class i to -1 and class j to +1.
    """

    classes: tuple
    pairs: tuple

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes),
            "pairs": [
                {"i": i, "j": j, "model": m.to_dict()} for i, j, m in self.pairs
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MulticlassSvmModel":
        return cls(
            classes=tuple(d["classes"]),
            pairs=tuple(
                (p["i"], p["j"], BinarySvmModel.from_dict(p["model"]))
                for p in d["pairs"]
            ),
        )


def train_multiclass(
    X,
    labels: Sequence,
    C: float = DEFAULT_C,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> MulticlassSvmModel:
    """Train one binary model per unordered class pair."""
    X = np.asarray(X, dtype=np.float64)
    labels = list(labels)
    if X.ndim != 2 or X.shape[0] != len(labels):
        raise ValueError(f"X of shape {X.shape} does not match {len(labels)} labels")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError("training set must contain at least two classes")
    index = {c: k for k, c in enumerate(classes)}
    lab = np.array([index[c] for c in labels])
    pairs = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            mask = (lab == i) | (lab == j)
            ysub = np.where(lab[mask] == j, 1.0, -1.0)
            pairs.append((i, j, train_binary(X[mask], ysub, C=C, tol=tol, max_sweeps=max_sweeps)))
    return MulticlassSvmModel(classes=classes, pairs=tuple(pairs))


def predict(model: MulticlassSvmModel, x):
    """Predict the class of one feature vector by pairwise vote."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("predict takes a single 1-D feature vector")
    n_classes = len(model.classes)
    votes = np.zeros(n_classes, dtype=int)
    strength = np.zeros(n_classes)
    for i, j, m in model.pairs:
        d = float(m.decision(x))
        votes[j if d > 0 else i] += 1
        strength[i] += abs(d)
        strength[j] += abs(d)
    best = min(
        range(n_classes), key=lambda c: (-votes[c], -strength[c], c)
    )
    return model.classes[best]
