#!/usr/bin/env python3
"""Linear SVMs trained by sequential dual coordinate updates.

Starts with a binary problem whose maximum-margin separator is known in
closed form, checks the solver against it, then trains a one-vs-one
multiclass model on three Gaussian blobs and inspects the pairwise vote.
"""

import numpy as np

from emoseg import predict, train_binary, train_multiclass

# Two points at -1 and +1 on a line: the margin-maximizing separator is
# w = 1, b = 0 and both points sit exactly on the margin.
model = train_binary(np.array([[-1.0], [1.0]]), np.array([-1.0, 1.0]))
print("two-point problem: "
      f"w = {model.w[0]:.6f}, b = {model.b:.6f} (expected 1, 0)")
print(f"converged after {model.sweeps} sweeps\n")

# A 2-D problem with overlap: soft margins cap each point's influence
# at C, so the fit degrades gracefully instead of chasing outliers.
rng = np.random.default_rng(6)
n = 80
X = np.vstack([
    rng.normal(loc=(-1.5, 0.0), scale=0.9, size=(n, 2)),
    rng.normal(loc=(+1.5, 0.0), scale=0.9, size=(n, 2)),
])
y = np.hstack([-np.ones(n), np.ones(n)])

for C in (0.01, 1.0, 100.0):
    m = train_binary(X, y, C=C)
    acc = np.mean(np.sign(m.decision(X)) == y)
    print(f"C = {C:6.2f}: |w| = {np.linalg.norm(m.w):7.3f}, "
          f"b = {m.b:+.3f}, train accuracy {acc:.3f}")

# One-vs-one multiclass: k classes give k(k-1)/2 binary machines, and
# prediction is by majority vote with the summed decision values
# breaking ties.
centers = {"ang": (0.0, 4.0), "joy": (4.0, 0.0), "sad": (-4.0, 0.0)}
pts, labels = [], []
for lab, c in centers.items():
    pts.append(rng.normal(loc=c, scale=0.7, size=(30, 2)))
    labels += [lab] * 30
Xm = np.vstack(pts)

mc = train_multiclass(Xm, labels, C=1.0)
print(f"\nmulticlass: classes {mc.classes}, "
      f"{len(mc.pairs)} pairwise machines")

hits = sum(predict(mc, x) == lab for x, lab in zip(Xm, labels))
print(f"training accuracy {hits}/{len(labels)}")

probe = np.array([0.0, 1.3])  # between all three blobs
print(f"\nprobe point {probe.tolist()}:")
for i, j, bm in mc.pairs:
    d = bm.decision(probe)
    winner = mc.classes[j] if d > 0 else mc.classes[i]
    print(f"  {mc.classes[i]} vs {mc.classes[j]}: "
          f"decision {d:+.3f} -> vote {winner}")
print(f"  majority -> {predict(mc, probe)}")
