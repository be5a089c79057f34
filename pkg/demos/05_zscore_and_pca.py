#!/usr/bin/env python3
"""Standardization and PCA on a correlated feature matrix.

Generates features with wildly different scales and strong correlation,
z-scores them, and fits a PCA that keeps 99% of the variance. Shows the
explained-variance spectrum, the compression ratio, and the round-trip
reconstruction error.
"""

import numpy as np

from emoseg import pca_fit, pca_inverse, pca_transform, zscore_apply, zscore_fit

rng = np.random.default_rng(5)

# 120 samples in 30 dims, but only ~6 underlying degrees of freedom.
latent = rng.normal(size=(120, 6))
mixing = rng.normal(size=(6, 30))
X = latent @ mixing + 0.05 * rng.normal(size=(120, 30))
X *= np.logspace(-2, 3, 30)          # scales spanning five decades
X += rng.normal(size=30) * 10.0      # arbitrary offsets

print(f"raw matrix {X.shape}: column stds span "
      f"{X.std(axis=0).min():.2e} .. {X.std(axis=0).max():.2e}")

zs = zscore_fit(X)
Z = zscore_apply(zs, X)
print(f"after z-score: means ~{np.abs(Z.mean(axis=0)).max():.1e}, "
      f"stds ~{Z.std(axis=0).mean():.3f}")

model = pca_fit(Z, threshold=0.99)
ratios = model.explained_ratio
print(f"\nPCA keeps k={model.k} of {Z.shape[1]} dims for 99% variance")
print("component  var share  cumulative")
cum = 0.0
for i, r in enumerate(ratios[: model.k]):
    cum += r
    bar = "#" * int(round(50 * r))
    print(f"  {i:2d}        {r:8.4f}   {cum:8.4f}  {bar}")

T = pca_transform(model, Z)
R = pca_inverse(model, T)
err = np.sum((Z - R) ** 2) / np.sum((Z - Z.mean(axis=0)) ** 2)
print(f"\nprojected matrix {T.shape}; reconstruction keeps "
      f"{100 * (1 - err):.2f}% of the centered energy")

# Components are orthonormal rows; the projection is a rigid rotation
# plus truncation, so distances shrink but never grow.
G = model.components @ model.components.T
print(f"component orthonormality: max |C C^T - I| = "
      f"{np.abs(G - np.eye(model.k)).max():.2e}")
d_before = np.linalg.norm(Z[0] - Z[1])
d_after = np.linalg.norm(T[0] - T[1])
print(f"pair distance before/after: {d_before:.3f} / {d_after:.3f}")

# Threshold sweep: lower thresholds keep fewer components.
print("\nthreshold  k")
for thr in (0.80, 0.90, 0.95, 0.99, 1.0):
    print(f"   {thr:4.2f}    {pca_fit(Z, threshold=thr).k}")
