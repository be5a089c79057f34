"""Command-line front end.

Subcommands: extract (features to CSV), evaluate (leave-one-out run to a
JSON report), grid (several configs to one JSON report), emodb-manifest
(manifest from a directory of corpus-convention filenames).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .config import ExperimentConfig, load_config
from .evaluate import (
    build_emodb_manifest,
    extract_features,
    loocv,
    parse_manifest,
    run_experiment_grid,
    write_manifest,
)
from .features import save_feature_csv


def _load_cli_config(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    scope = getattr(args, "preprocessing_scope", None)
    if scope:
        config = dataclasses.replace(config, preprocessing_scope=scope)
    return config


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _print_report(report):
    print(f"utterances: {int(report.confusion.sum())}")
    print(f"dims: {report.dims_before} -> {report.dims_after}")
    print(f"WA: {100.0 * report.wa:.2f}%  UA: {100.0 * report.ua:.2f}%")
    width = max(len(c) for c in report.classes)
    print("per-class recall:")
    for c, r in zip(report.classes, report.per_class_recall):
        print(f"  {c:<{width}}  {100.0 * r:6.2f}%")
    print("confusion (rows true, cols predicted):")
    for c, row in zip(report.classes, report.confusion):
        cells = " ".join(f"{int(v):4d}" for v in row)
        print(f"  {c:<{width}}  {cells}")


def _cmd_extract(args) -> int:
    config = _load_cli_config(args)
    entries = parse_manifest(args.manifest)
    vectors = extract_features(
        entries, config, skip_bad_utterances=args.skip_bad_utterances
    )
    metadata = {
        "config": json.dumps(config.to_dict(), sort_keys=True),
        "extraction_hash": config.extraction_hash(),
    }
    save_feature_csv(args.out, vectors, metadata=metadata)
    print(f"wrote {len(vectors)} x {len(vectors[0])} features to {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    config = _load_cli_config(args)
    entries = parse_manifest(args.manifest)
    report = loocv(entries, config, skip_bad_utterances=args.skip_bad_utterances)
    _write_json(args.report, report.to_dict())
    _print_report(report)
    print(f"report written to {args.report}")
    return 0


def _cmd_grid(args) -> int:
    entries = parse_manifest(args.manifest)
    with open(args.grid) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "configs" in doc:
        doc = doc["configs"]
    if not isinstance(doc, list):
        raise ValueError(f'{args.grid}: expected a JSON list or {{"configs": [...]}}')
    configs = [ExperimentConfig.from_dict(d) for d in doc]
    if getattr(args, "preprocessing_scope", None):
        configs = [
            dataclasses.replace(c, preprocessing_scope=args.preprocessing_scope)
            for c in configs
        ]
    result = run_experiment_grid(
        entries, configs, skip_bad_utterances=args.skip_bad_utterances
    )
    _write_json(args.report, result)
    for row in result["rows"]:
        scheme = row["config"]["scheme"]
        label = scheme if isinstance(scheme, str) else f"rti{scheme['rti']}"
        if row["config"]["include_hist"]:
            label += "+hist"
        print(
            f"{label:<12} dims {row['dims_before']:>5} -> "
            f"{row['dims_after']:>5}  WA {100.0 * row['wa']:6.2f}%  "
            f"UA {100.0 * row['ua']:6.2f}%"
        )
    print(f"report written to {args.report}")
    return 0


def _cmd_emodb_manifest(args) -> int:
    entries, skipped = build_emodb_manifest(args.dir)
    for name in skipped:
        print(f"skipping unrecognized filename: {name}", file=sys.stderr)
    if not entries:
        raise ValueError(f"{args.dir}: no corpus-convention WAV files found")
    write_manifest(args.out, entries)
    print(f"wrote {len(entries)} entries to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emoseg",
        description="Segmental prosodic features and SVM emotion classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract features for a manifest to CSV")
    p.add_argument("--manifest", required=True, help="path,label,speaker CSV")
    p.add_argument("--config", help="experiment config JSON (defaults apply if omitted)")
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--skip-bad-utterances", action="store_true")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("evaluate", help="leave-one-out evaluation to a JSON report")
    p.add_argument("--manifest", required=True, help="path,label,speaker CSV")
    p.add_argument("--config", help="experiment config JSON (defaults apply if omitted)")
    p.add_argument("--report", required=True, help="output report JSON")
    p.add_argument(
        "--preprocessing-scope",
        choices=("per-fold", "global"),
        help="override the config's standardization/PCA fitting scope",
    )
    p.add_argument("--skip-bad-utterances", action="store_true")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("grid", help="evaluate several configs to one JSON report")
    p.add_argument("--manifest", required=True, help="path,label,speaker CSV")
    p.add_argument("--grid", required=True, help="JSON list of config objects")
    p.add_argument("--report", required=True, help="output report JSON")
    p.add_argument(
        "--preprocessing-scope",
        choices=("per-fold", "global"),
        help="override every config's fitting scope",
    )
    p.add_argument("--skip-bad-utterances", action="store_true")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser(
        "emodb-manifest", help="build a manifest from corpus-convention filenames"
    )
    p.add_argument("--dir", required=True, help="directory of WAV files")
    p.add_argument("--out", required=True, help="output manifest CSV")
    p.set_defaults(func=_cmd_emodb_manifest)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
