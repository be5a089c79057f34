"""End-to-end command-line runs against a tiny on-disk corpus."""

import json

import numpy as np
import pytest

from emoseg import load_feature_csv, parse_manifest
from emoseg.cli import main
from helpers import sine, write_wav


@pytest.fixture()
def corpus(tmp_path):
    """Nine jittered tone WAVs in three classes plus a manifest."""
    rng = np.random.default_rng(7)
    rows = ["path,label,speaker"]
    for freq, label in [(120.0, "low"), (240.0, "mid"), (360.0, "high")]:
        for k in range(3):
            name = f"{label}{k}.wav"
            x = sine(
                freq + rng.uniform(-3, 3),
                7200,
                16000,
                amp=0.4 + rng.uniform(-0.05, 0.05),
                phase=rng.uniform(0, 6.28),
            ) + 0.002 * rng.standard_normal(7200)
            write_wav(tmp_path / name, 16000, (x * 32767).astype(np.int16), np.int16)
            rows.append(f"{name},{label},s{k}")
    manifest = tmp_path / "manifest.csv"
    manifest.write_text("\n".join(rows) + "\n")
    return tmp_path, manifest


def test_extract_command(corpus, capsys):
    root, manifest = corpus
    out = root / "features.csv"
    assert main(["extract", "--manifest", str(manifest), "--out", str(out)]) == 0
    assert "wrote 9 x 384" in capsys.readouterr().out
    vectors, metadata = load_feature_csv(out)
    assert len(vectors) == 9
    assert vectors[0].label == "low"
    assert "extraction_hash" in metadata
    assert json.loads(metadata["config"])["scheme"] == "gti"


def test_extract_honors_config_file(corpus):
    root, manifest = corpus
    config = root / "config.json"
    config.write_text(json.dumps({"scheme": {"rti": 2}, "include_hist": True}))
    out = root / "features.csv"
    code = main([
        "extract", "--manifest", str(manifest),
        "--config", str(config), "--out", str(out),
    ])
    assert code == 0
    vectors, _ = load_feature_csv(out)
    assert len(vectors[0]) == 786


def test_evaluate_command(corpus, capsys):
    root, manifest = corpus
    report_path = root / "report.json"
    code = main([
        "evaluate", "--manifest", str(manifest), "--report", str(report_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "utterances: 9" in out
    assert "WA: 100.00%" in out
    assert "confusion" in out
    report = json.loads(report_path.read_text())
    assert report["classes"] == ["high", "low", "mid"]
    assert report["wa"] == 1.0
    assert report["dims_before"] == 384
    assert len(report["predictions"]) == 9


def test_evaluate_scope_override(corpus):
    root, manifest = corpus
    report_path = root / "report.json"
    code = main([
        "evaluate", "--manifest", str(manifest), "--report", str(report_path),
        "--preprocessing-scope", "global",
    ])
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["config"]["preprocessing_scope"] == "global"


def test_grid_command(corpus, capsys):
    root, manifest = corpus
    grid = root / "grid.json"
    grid.write_text(json.dumps([
        {"scheme": "gti"},
        {"scheme": {"rti": 2}, "include_hist": True, "pca": 0.99},
    ]))
    report_path = root / "grid_report.json"
    code = main([
        "grid", "--manifest", str(manifest), "--grid", str(grid),
        "--report", str(report_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "gti " in out and "rti2+hist" in out
    doc = json.loads(report_path.read_text())
    assert [r["dims_before"] for r in doc["rows"]] == [384, 786]


def test_grid_accepts_configs_wrapper(corpus):
    root, manifest = corpus
    grid = root / "grid.json"
    grid.write_text(json.dumps({"configs": [{"scheme": "gti"}]}))
    report_path = root / "grid_report.json"
    code = main([
        "grid", "--manifest", str(manifest), "--grid", str(grid),
        "--report", str(report_path),
    ])
    assert code == 0
    assert len(json.loads(report_path.read_text())["rows"]) == 1


def test_grid_runs_are_byte_identical(corpus):
    root, manifest = corpus
    grid = root / "grid.json"
    grid.write_text(json.dumps([{"scheme": "gti", "pca": 0.99}]))
    paths = [root / "a.json", root / "b.json"]
    for p in paths:
        assert main([
            "grid", "--manifest", str(manifest), "--grid", str(grid),
            "--report", str(p),
        ]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_emodb_manifest_command(corpus, capsys):
    root, _ = corpus
    wav_dir = root / "emodb"
    wav_dir.mkdir()
    tone = (sine(150.0, 8000, 16000) * 32767).astype(np.int16)
    for name in ["03a01Wa.wav", "08b02Fc.wav", "stray.wav"]:
        write_wav(wav_dir / name, 16000, tone, np.int16)
    out = root / "emodb.csv"
    code = main(["emodb-manifest", "--dir", str(wav_dir), "--out", str(out)])
    assert code == 0
    captured = capsys.readouterr()
    assert "wrote 2 entries" in captured.out
    assert "stray.wav" in captured.err
    entries = parse_manifest(out)
    assert [e.label for e in entries] == ["anger", "happiness"]


def test_missing_manifest_is_a_clean_error(tmp_path, capsys):
    code = main([
        "evaluate", "--manifest", str(tmp_path / "none.csv"),
        "--report", str(tmp_path / "r.json"),
    ])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_bad_grid_document_is_a_clean_error(corpus, capsys):
    root, manifest = corpus
    grid = root / "grid.json"
    grid.write_text(json.dumps({"rows": []}))
    code = main([
        "grid", "--manifest", str(manifest), "--grid", str(grid),
        "--report", str(root / "r.json"),
    ])
    assert code == 1
    assert "expected a JSON list" in capsys.readouterr().err


def test_unknown_config_key_is_a_clean_error(corpus, capsys):
    root, manifest = corpus
    config = root / "config.json"
    config.write_text(json.dumps({"svc": 1.0}))
    code = main([
        "extract", "--manifest", str(manifest),
        "--config", str(config), "--out", str(root / "f.csv"),
    ])
    assert code == 1
    assert "unknown config keys" in capsys.readouterr().err


def test_emodb_manifest_requires_corpus_files(tmp_path, capsys):
    wav_dir = tmp_path / "empty"
    wav_dir.mkdir()
    code = main(["emodb-manifest", "--dir", str(wav_dir), "--out", str(tmp_path / "m.csv")])
    assert code == 1
    assert "no corpus-convention" in capsys.readouterr().err


def test_skip_bad_utterances_flag(corpus):
    root, manifest = corpus
    lines = manifest.read_text().splitlines()
    lines.insert(1, "missing.wav,low,s9")
    manifest.write_text("\n".join(lines) + "\n")
    out = root / "features.csv"
    with pytest.warns(UserWarning, match="missing.wav"):
        code = main([
            "extract", "--manifest", str(manifest), "--out", str(out),
            "--skip-bad-utterances",
        ])
    assert code == 0
    vectors, _ = load_feature_csv(out)
    assert len(vectors) == 9
