#!/usr/bin/env python3
"""Drive the command-line interface end to end in a scratch directory.

Builds a synthetic corpus, then runs the same commands a shell user
would: extract features to a CSV cache, evaluate one configuration,
and sweep a small grid, reusing the cache for configurations that share
an extraction recipe. Everything runs in-process through the CLI entry
point, so this doubles as a smoke test of the installed console script.
"""

import json
import tempfile
from pathlib import Path

from emoseg import write_synthetic_corpus
from emoseg.cli import main

with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp)
    manifest = write_synthetic_corpus(root, clips_per_class=4, seed=1)
    print(f"manifest: {manifest}\n")

    config = root / "config.json"
    config.write_text(json.dumps({
        "scheme": {"rti": 3},
        "include_hist": True,
        "pca": 0.99,
        "svm_c": 1.0,
    }, indent=2))
    print("$ emoseg extract --manifest corpus.csv --config config.json "
          "--out cache.csv")
    cache = root / "cache.csv"
    rc = main(["extract", "--manifest", str(manifest),
               "--config", str(config), "--out", str(cache)])
    lines = cache.read_text().splitlines()
    print(f"(exit {rc}; cache has {len(lines)} lines, header + metadata "
          f"+ one row per utterance)\n")

    print("$ emoseg evaluate --manifest corpus.csv --config config.json "
          "--report report.json")
    report = root / "report.json"
    rc = main(["evaluate", "--manifest", str(manifest),
               "--config", str(config), "--report", str(report)])
    print(f"(exit {rc})\n")

    doc = json.loads(report.read_text())
    print(f"report keys: {sorted(doc)}")
    print(f"classes: {doc['classes']}")
    print(f"WA {100 * doc['wa']:.2f}%  UA {100 * doc['ua']:.2f}%  "
          f"dims {doc['dims_before']} -> {doc['dims_after']}\n")

    grid = root / "grid.json"
    grid.write_text(json.dumps([
        {"scheme": "gti", "pca": 0.99},
        {"scheme": "gti", "include_hist": True, "pca": 0.99},
        {"scheme": {"rti": 3}, "include_hist": True, "pca": 0.99},
    ]))
    print("$ emoseg grid --manifest corpus.csv --grid grid.json "
          "--report grid_report.json")
    grid_report = root / "grid_report.json"
    rc = main(["grid", "--manifest", str(manifest), "--grid", str(grid),
               "--report", str(grid_report)])
    print(f"(exit {rc})\n")

    rows = json.loads(grid_report.read_text())["rows"]
    print("grid results:")
    print("  dims_before  dims_after     WA      UA")
    for row in rows:
        print(f"  {row['dims_before']:11d}  {row['dims_after']:10d}  "
              f"{100 * row['wa']:6.2f}%  {100 * row['ua']:6.2f}%")
