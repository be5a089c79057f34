"""Segmental prosodic features and linear-SVM emotion classification.

Pipeline: WAV -> frames -> low-level descriptors (ZCR, RMS, pitch, HNR,
MFCC 1-12, plus deltas) -> equal-time segments -> per-segment functionals
and pitch histograms -> z-score + PCA -> one-vs-one linear SVM, evaluated
by leave-one-utterance-out cross-validation.
"""

from .audio import AudioClip, Frame, frame_clip, frame_region, load_wav, samples_per
from .config import ExperimentConfig, load_config
from .evaluate import (
    EMODB_CLASSES,
    EvaluationReport,
    ManifestEntry,
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
from .features import (
    FUNCTIONAL_NAMES,
    UtteranceFeatureVector,
    assemble,
    feature_dim,
    functionals,
    histogram_bin_count,
    load_feature_csv,
    pitch_histogram,
    save_feature_csv,
)
from .lld import (
    ALL_STREAM_NAMES,
    STREAM_NAMES,
    LldMatrix,
    acf,
    delta,
    estimate_pitch,
    extract_lld_matrix,
    hnr,
    mfcc,
    rms_energy,
    zcr,
)
from .preprocess import (
    PcaModel,
    ZScoreModel,
    load_preprocess_models,
    pca_fit,
    pca_inverse,
    pca_transform,
    save_preprocess_models,
    zscore_apply,
    zscore_fit,
)
from .segmentation import Segment, SegmentationScheme, segment
from .svm import (
    BinarySvmModel,
    MulticlassSvmModel,
    predict,
    train_binary,
    train_multiclass,
)
from .synth import synth_tone, synthetic_clips, write_synthetic_corpus

__version__ = "0.1.0"
