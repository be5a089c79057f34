"""Manifests, metrics, LOOCV protocol, and the experiment grid."""

import warnings

import numpy as np
import pytest

import emoseg.evaluate as evaluate_mod
from emoseg import (
    EMODB_CLASSES,
    EvaluationReport,
    ExperimentConfig,
    ManifestEntry,
    SegmentationScheme,
    UtteranceFeatureVector,
    build_emodb_manifest,
    compute_metrics,
    emodb_parse_filename,
    extract_features,
    loocv,
    parse_manifest,
    run_experiment_grid,
    ua_delta_report,
    write_manifest,
)
from emoseg.evaluate import _modal_dim
from helpers import sine, write_wav


# ---------------------------------------------------------------- metrics

def test_compute_metrics_hand_case():
    cm = [[8, 2], [3, 7]]
    wa, ua, recalls = compute_metrics(cm)
    assert wa == pytest.approx(15 / 20)
    np.testing.assert_allclose(recalls, [0.8, 0.7])
    assert ua == pytest.approx(0.75)


def test_compute_metrics_unbalanced_counts_split_wa_from_ua():
    # 90 of one class, 10 of the other: WA follows the big class
    cm = [[81, 9], [5, 5]]
    wa, ua, _ = compute_metrics(cm)
    assert wa == pytest.approx(0.86)
    assert ua == pytest.approx((0.9 + 0.5) / 2)


def test_compute_metrics_accepts_fractional_matrices():
    wa, ua, recalls = compute_metrics([[0.5, 0.5], [0.0, 2.0]])
    assert recalls[0] == pytest.approx(0.5)
    assert recalls[1] == pytest.approx(1.0)
    assert wa == pytest.approx(2.5 / 3.0)
    assert ua == pytest.approx(0.75)


def test_compute_metrics_empty_row_gets_zero_recall():
    wa, ua, recalls = compute_metrics([[0, 0], [1, 9]])
    assert recalls[0] == 0.0
    assert ua == pytest.approx(0.45)
    assert wa == pytest.approx(0.9)


@pytest.mark.parametrize(
    "cm", [[[1, 2, 3], [4, 5, 6]], [[-1, 0], [0, 1]], [[0, 0], [0, 0]]]
)
def test_compute_metrics_rejects_bad_matrices(cm):
    with pytest.raises(ValueError):
        compute_metrics(cm)


# ---------------------------------------------------------------- Emo-DB names

@pytest.mark.parametrize(
    "name,want",
    [
        ("03a01Wa.wav", ("anger", "03")),
        ("16b10Tb.wav", ("sadness", "16")),
        ("08a07La.wav", ("boredom", "08")),
        ("11c02Ea.wav", ("disgust", "11")),
        ("09b03Ad.wav", ("fear", "09")),
        ("13b09Fc.wav", ("happiness", "13")),
        ("14a05Nb.wav", ("neutral", "14")),
    ],
)
def test_emodb_filenames_decode(name, want):
    assert emodb_parse_filename(name) == want


@pytest.mark.parametrize(
    "name",
    [
        "readme.txt",
        "03a01Xa.wav",   # no such emotion letter
        "3a01Wa.wav",    # speaker must be two digits
        "03a1Wa.wav",    # text code must be letter + two digits
        "03a01W.wav",    # missing version character
        "03a01Waa.wav",
    ],
)
def test_non_corpus_names_rejected(name):
    assert emodb_parse_filename(name) is None


def test_emodb_classes_cover_the_codes():
    assert set(EMODB_CLASSES) == {
        "anger", "boredom", "disgust", "fear", "happiness", "neutral", "sadness",
    }


def test_build_emodb_manifest(tmp_path):
    tone = sine(200.0, 8000, 16000)
    for name in ["03a01Wa.wav", "03a02Fb.wav", "notes.wav", "cover.txt"]:
        write_wav(tmp_path / name, 16000, (tone * 32767).astype(np.int16), np.int16)
    entries, skipped = build_emodb_manifest(tmp_path)
    assert [e.label for e in entries] == ["anger", "happiness"]
    assert all(e.speaker == "03" for e in entries)
    assert skipped == ["notes.wav"]
    # paths are absolute so the manifest can be written anywhere
    assert all(e.path.startswith("/") for e in entries)


def test_build_emodb_manifest_missing_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        build_emodb_manifest(tmp_path / "absent")


# ---------------------------------------------------------------- manifests

def test_manifest_round_trip(tmp_path):
    entries = [
        ManifestEntry(path="/data/a.wav", label="anger", speaker="03"),
        ManifestEntry(path="/data/b.wav", label="fear", speaker="08"),
    ]
    path = tmp_path / "manifest.csv"
    write_manifest(path, entries)
    assert parse_manifest(path) == entries


def test_manifest_relative_paths_resolve_against_its_directory(tmp_path):
    sub = tmp_path / "corpus"
    sub.mkdir()
    path = sub / "manifest.csv"
    path.write_text("path,label,speaker\nclip.wav,anger,01\n")
    (entry,) = parse_manifest(path)
    assert entry.path == str(sub / "clip.wav")


@pytest.mark.parametrize(
    "body,msg",
    [
        ("file,emotion,who\nx.wav,anger,01\n", "header"),
        ("path,label,speaker\nx.wav,anger\n", "row 2"),
        ("path,label,speaker\nx.wav,,01\n", "missing"),
        ("path,label,speaker\nx.wav,anger,01\nx.wav,fear,02\n", "duplicate"),
        ("path,label,speaker\n", "no utterances"),
    ],
)
def test_manifest_rejects_malformed_files(tmp_path, body, msg):
    path = tmp_path / "manifest.csv"
    path.write_text(body)
    with pytest.raises(ValueError, match=msg):
        parse_manifest(path)


def test_manifest_class_restriction(tmp_path):
    path = tmp_path / "manifest.csv"
    path.write_text("path,label,speaker\nx.wav,surprise,01\n")
    with pytest.raises(ValueError, match="surprise"):
        parse_manifest(path, classes=EMODB_CLASSES)


# ---------------------------------------------------------------- extraction

def tiny_corpus(tmp_path, freqs=(120.0, 240.0, 360.0), per_class=3, seconds=0.45):
    """Write jittered tone WAVs plus a manifest; class names follow the
    nominal frequency. Per-clip frequency/amplitude jitter and a little
    noise keep within-class variance honest, like any real corpus."""
    rng = np.random.default_rng(99)
    entries = []
    n = int(seconds * 16000)
    for freq in freqs:
        for k in range(per_class):
            name = f"tone{int(freq)}_{k}.wav"
            x = sine(
                freq + rng.uniform(-3.0, 3.0),
                n,
                16000,
                amp=0.4 + rng.uniform(-0.05, 0.05),
                phase=rng.uniform(0.0, 2.0 * np.pi),
            ) + 0.002 * rng.standard_normal(n)
            write_wav(tmp_path / name, 16000, (x * 32767).astype(np.int16), np.int16)
            entries.append(
                ManifestEntry(path=str(tmp_path / name), label=f"f{int(freq)}")
            )
    manifest = tmp_path / "manifest.csv"
    write_manifest(manifest, entries)
    return manifest, entries


def test_extract_features_produces_labeled_vectors(tmp_path):
    _, entries = tiny_corpus(tmp_path, per_class=1)
    config = ExperimentConfig()
    vectors = extract_features(entries, config)
    assert len(vectors) == 3
    assert [v.label for v in vectors] == ["f120", "f240", "f360"]
    assert all(len(v) == 384 for v in vectors)


def test_extract_features_names_the_failing_utterance(tmp_path):
    _, entries = tiny_corpus(tmp_path, per_class=1)
    entries.append(ManifestEntry(path=str(tmp_path / "gone.wav"), label="f120"))
    with pytest.raises(ValueError, match="gone.wav"):
        extract_features(entries, ExperimentConfig())


def test_extract_features_can_skip_bad_utterances(tmp_path):
    _, entries = tiny_corpus(tmp_path, per_class=1)
    entries.insert(1, ManifestEntry(path=str(tmp_path / "gone.wav"), label="f120"))
    with pytest.warns(UserWarning, match="gone.wav"):
        vectors = extract_features(entries, ExperimentConfig(), skip_bad_utterances=True)
    assert len(vectors) == 3


def test_extract_features_with_nothing_usable(tmp_path):
    entries = [ManifestEntry(path=str(tmp_path / "gone.wav"), label="x")]
    with pytest.raises(ValueError, match="no utterance"):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            extract_features(entries, ExperimentConfig(), skip_bad_utterances=True)


# ---------------------------------------------------------------- loocv

def crafted_features(per_class=5, d=4, spread=0.05, seed=0):
    """Three well-separated numeric classes, no audio involved."""
    rng = np.random.default_rng(seed)
    layout = tuple(f"f{i}" for i in range(d))
    centers = {"a": 0.0, "b": 5.0, "c": -5.0}
    vectors = []
    for label, c in centers.items():
        for k in range(per_class):
            vectors.append(
                UtteranceFeatureVector(
                    values=rng.normal(c, spread, size=d),
                    layout=layout,
                    source_id=f"{label}{k}",
                    label=label,
                )
            )
    return vectors


def test_loocv_on_separable_features():
    vectors = crafted_features()
    report = loocv([], ExperimentConfig(), features=vectors)
    assert report.wa == 1.0 and report.ua == 1.0
    assert report.classes == ("a", "b", "c")
    assert report.dims_before == 4 and report.dims_after == 4
    np.testing.assert_array_equal(report.confusion, np.eye(3, dtype=int) * 5)
    assert len(report.predictions) == 15
    assert report.predictions[0] == {"id": "a0", "true": "a", "predicted": "a"}


def test_loocv_with_pca_reports_reduced_dims():
    vectors = crafted_features(d=6)
    report = loocv([], ExperimentConfig(pca=0.99), features=vectors)
    assert report.wa == 1.0
    assert report.dims_before == 6
    assert 1 <= report.dims_after < 6


def test_loocv_per_fold_scope_never_fits_on_held_out_row(monkeypatch):
    vectors = crafted_features(per_class=4)
    n = len(vectors)
    fit_rows = []
    real_fit = evaluate_mod.zscore_fit

    def spying_fit(X):
        fit_rows.append(np.asarray(X).shape[0])
        return real_fit(X)

    monkeypatch.setattr(evaluate_mod, "zscore_fit", spying_fit)
    pca_rows = []
    real_pca = evaluate_mod.pca_fit

    def spying_pca(X, threshold):
        pca_rows.append(np.asarray(X).shape[0])
        return real_pca(X, threshold=threshold)

    monkeypatch.setattr(evaluate_mod, "pca_fit", spying_pca)
    loocv([], ExperimentConfig(pca=0.99), features=vectors)
    # one standardization and one projection fit per fold, each on n - 1 rows
    assert fit_rows == [n - 1] * n
    assert pca_rows == [n - 1] * n


def test_loocv_global_scope_fits_once(monkeypatch):
    vectors = crafted_features(per_class=4)
    n = len(vectors)
    fit_rows = []
    real_fit = evaluate_mod.zscore_fit

    def spying_fit(X):
        fit_rows.append(np.asarray(X).shape[0])
        return real_fit(X)

    monkeypatch.setattr(evaluate_mod, "zscore_fit", spying_fit)
    report = loocv(
        [],
        ExperimentConfig(pca=0.99, preprocessing_scope="global"),
        features=vectors,
    )
    assert fit_rows == [n]
    assert report.wa == 1.0


def test_loocv_training_always_excludes_held_out_utterance(monkeypatch):
    vectors = crafted_features(per_class=4)
    n = len(vectors)
    seen = []
    real_train = evaluate_mod.train_multiclass

    def spying_train(X, labels, **kwargs):
        seen.append(np.asarray(X).shape[0])
        return real_train(X, labels, **kwargs)

    monkeypatch.setattr(evaluate_mod, "train_multiclass", spying_train)
    loocv([], ExperimentConfig(), features=vectors)
    assert seen == [n - 1] * n


def test_loocv_warns_on_single_instance_class():
    vectors = crafted_features(per_class=3)[:7]  # class "c" keeps one vector
    with pytest.warns(UserWarning, match="'c' has a single utterance"):
        report = loocv([], ExperimentConfig(), features=vectors)
    # its only fold cannot know the class, so that utterance must miss
    assert report.confusion[2, 2] == 0


@pytest.mark.parametrize(
    "mutate,msg",
    [
        (lambda vs: [vs[0], vs[5]], "at least three"),  # one "a", one "b"
        (lambda vs: [v for v in vs if v.label == "a"], "at least two classes"),
    ],
)
def test_loocv_rejects_degenerate_corpora(mutate, msg):
    vectors = mutate(crafted_features())
    with pytest.raises(ValueError, match=msg):
        loocv([], ExperimentConfig(), features=vectors)


def test_loocv_requires_labels():
    vectors = crafted_features()
    unlabeled = UtteranceFeatureVector(
        values=vectors[0].values, layout=vectors[0].layout, source_id="x"
    )
    with pytest.raises(ValueError, match="label"):
        loocv([], ExperimentConfig(), features=[*vectors, unlabeled])


def test_loocv_end_to_end_on_audio(tmp_path):
    manifest, entries = tiny_corpus(tmp_path)
    report = loocv(entries, ExperimentConfig(pca=0.99))
    assert report.wa == 1.0
    assert report.dims_before == 384


def test_modal_dim_breaks_ties_toward_smaller():
    assert _modal_dim([5, 5, 7]) == 5
    assert _modal_dim([7, 5, 5, 7]) == 5
    assert _modal_dim([9]) == 9


def test_report_to_dict_is_json_shaped():
    report = loocv([], ExperimentConfig(pca=0.99), features=crafted_features())
    doc = report.to_dict()
    assert doc["classes"] == ["a", "b", "c"]
    assert doc["wa"] == 1.0
    assert isinstance(doc["confusion"][0][0], int)
    assert doc["config"]["pca"] == 0.99
    assert len(doc["predictions"]) == 15


# ---------------------------------------------------------------- deltas

def fake_report(classes, recalls):
    recalls = np.asarray(recalls, dtype=np.float64)
    cm = np.diag(recalls)
    return EvaluationReport(
        classes=tuple(classes),
        confusion=cm,
        wa=0.0,
        ua=float(recalls.mean()),
        per_class_recall=recalls,
        dims_before=0,
        dims_after=0,
        config=ExperimentConfig(),
        predictions=(),
    )


def test_ua_delta_report_sorts_by_gain():
    base = fake_report(["a", "b", "c"], [0.50, 0.80, 0.90])
    cand = fake_report(["a", "b", "c"], [0.70, 0.60, 0.90])
    rows = ua_delta_report(base, cand)
    assert [r["class"] for r in rows] == ["a", "c", "b"]
    assert rows[0]["delta"] == pytest.approx(0.20)
    assert rows[1]["delta"] == pytest.approx(0.0)
    assert rows[2]["delta"] == pytest.approx(-0.20)
    assert rows[0]["baseline"] == pytest.approx(0.50)
    assert rows[0]["candidate"] == pytest.approx(0.70)


def test_ua_delta_report_ties_sort_by_class_name():
    base = fake_report(["b", "a"], [0.5, 0.5])  # classes tuple as given
    cand = fake_report(["b", "a"], [0.6, 0.6])
    rows = ua_delta_report(base, cand)
    assert [r["class"] for r in rows] == ["a", "b"]


def test_ua_delta_report_rejects_mismatched_classes():
    base = fake_report(["a", "b"], [0.5, 0.5])
    cand = fake_report(["a", "c"], [0.5, 0.5])
    with pytest.raises(ValueError, match="class sets differ"):
        ua_delta_report(base, cand)


# ---------------------------------------------------------------- grid

def test_grid_reuses_extraction_across_compatible_configs(tmp_path, monkeypatch):
    manifest, entries = tiny_corpus(tmp_path)
    calls = []
    real_extract = evaluate_mod.extract_features

    def spying_extract(*args, **kwargs):
        calls.append(1)
        return real_extract(*args, **kwargs)

    monkeypatch.setattr(evaluate_mod, "extract_features", spying_extract)
    configs = [
        ExperimentConfig(),                       # same extraction ...
        ExperimentConfig(pca=0.99),               # ... pca differs only
        ExperimentConfig(svm_c=10.0),             # ... C differs only
        ExperimentConfig(scheme=SegmentationScheme.rti(2)),  # new extraction
    ]
    result = run_experiment_grid(entries, configs)
    assert len(calls) == 2
    assert len(result["rows"]) == 4
    assert result["rows"][0]["dims_before"] == 384
    assert result["rows"][3]["dims_before"] == 768
    # the three 384-dim rows separate this corpus outright; the doubled
    # dimension count against 8 training rows is honestly harder, so the
    # last row only gets a sanity floor
    assert all(row["wa"] == 1.0 for row in result["rows"][:3])
    assert result["rows"][3]["wa"] >= 0.7


def test_grid_rejects_empty_config_list(tmp_path):
    manifest, entries = tiny_corpus(tmp_path, per_class=1)
    with pytest.raises(ValueError, match="at least one"):
        run_experiment_grid(entries, [])
