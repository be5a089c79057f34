"""Utterance-level feature vectors.

Each segment contributes 12 functionals of each of the 32 descriptor
contours (384 values), and optionally a normalized pitch histogram.
Every coordinate carries a layout name such as "seg1.dpitch.lr_slope" or
"seg0.hist.bin03", so vectors from different runs can be checked for
structural compatibility.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .audio import AudioClip, frame_region
from .lld import ALL_STREAM_NAMES, estimate_pitch, extract_lld_matrix
from .segmentation import SegmentationScheme, segment

FUNCTIONAL_NAMES = (
    "mean",
    "std",
    "kurtosis",
    "skewness",
    "min",
    "max",
    "rel_min_pos",
    "rel_max_pos",
    "range",
    "lr_offset",
    "lr_slope",
    "lr_mse",
)


def functionals(contour) -> np.ndarray:
    """The 12 summary statistics of one contour, in FUNCTIONAL_NAMES order.

    Moments are population moments (divisor M); kurtosis is m4/m2^2
    without the -3 excess shift, and skewness/kurtosis are defined as 0
    for a constant contour. Extremum positions are first occurrences,
    reported relative to the contour length (0 for a single sample). The
    linear regression runs over abscissae t_i = i/(M-1) in [0, 1]; lr_mse
    is the mean squared residual.
    """
    x = np.asarray(contour, dtype=np.float64).ravel()
    m = x.size
    if m == 0:
        raise ValueError("functionals of an empty contour")
    if not np.all(np.isfinite(x)):
        raise ValueError("functionals of a contour with non-finite values")
    mean = float(np.mean(x))
    dev = x - mean
    m2 = float(np.mean(dev * dev))
    std = float(np.sqrt(m2))
    if m2 > 0.0:
        skewness = float(np.mean(dev**3) / m2**1.5)
        kurtosis = float(np.mean(dev**4) / (m2 * m2))
    else:
        skewness = 0.0
        kurtosis = 0.0
    imin = int(np.argmin(x))
    imax = int(np.argmax(x))
    vmin = float(x[imin])
    vmax = float(x[imax])
    if m > 1:
        rel_min_pos = imin / (m - 1)
        rel_max_pos = imax / (m - 1)
        t = np.linspace(0.0, 1.0, m)
        t_dev = t - 0.5
        lr_slope = float(np.dot(t_dev, dev) / np.dot(t_dev, t_dev))
        lr_offset = mean - lr_slope * 0.5
        resid = x - (lr_offset + lr_slope * t)
        lr_mse = float(np.mean(resid * resid))
    else:
        rel_min_pos = 0.0
        rel_max_pos = 0.0
        lr_slope = 0.0
        lr_offset = mean
        lr_mse = 0.0
    return np.array(
        [
            mean,
            std,
            kurtosis,
            skewness,
            vmin,
            vmax,
            rel_min_pos,
            rel_max_pos,
            vmax - vmin,
            lr_offset,
            lr_slope,
            lr_mse,
        ]
    )


def histogram_bin_count(a: float, b: float, h: float) -> int:
    """Number of histogram bins; validates that h tiles [a, b] exactly."""
    if not (b > a > 0 and h > 0):
        raise ValueError(f"need b > a > 0 and h > 0, got a={a}, b={b}, h={h}")
    nbins = (b - a) / h
    if abs(nbins - round(nbins)) > 1e-9 or round(nbins) < 1:
        raise ValueError(f"bin width {h} does not tile [{a}, {b}] exactly")
    return int(round(nbins))


def pitch_histogram(
    pitches, a: float = 50.0, b: float = 500.0, h: float = 50.0
) -> np.ndarray:
    """Distribution of voiced pitch values over bins of width h on [a, b].

    Bins are half-open [edge, edge+h) with the last bin closed at b.
    Counts are normalized by the number of in-range voiced values, so the
    entries sum to 1; with no voiced in-range values the histogram is all
    zeros. NaN entries (unvoiced frames) are ignored.
    """
    nbins = histogram_bin_count(a, b, h)
    p = np.asarray(pitches, dtype=np.float64).ravel()
    p = p[np.isfinite(p)]
    in_range = p[(p >= a) & (p <= b)]
    if in_range.size == 0:
        return np.zeros(nbins)
    counts, _ = np.histogram(in_range, bins=np.linspace(a, b, nbins + 1))
    return counts / in_range.size


@dataclass(frozen=True, eq=False)
class UtteranceFeatureVector:
    """One utterance's feature vector plus the name of every coordinate."""

    values: np.ndarray
    layout: tuple[str, ...]
    source_id: str = ""
    label: Optional[str] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).ravel()
        if v.size != len(self.layout):
            raise ValueError(
                f"{v.size} values but {len(self.layout)} layout names"
            )
        if len(set(self.layout)) != len(self.layout):
            raise ValueError("layout names must be unique")
        if not np.all(np.isfinite(v)):
            raise ValueError("feature vector contains non-finite values")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "layout", tuple(self.layout))

    def __len__(self) -> int:
        return self.values.size


def _region_pitches(
    clip: AudioClip,
    start: int,
    length: int,
    frame_ms: float,
    hop_ms: float,
    fmin: float,
    fmax: float,
) -> np.ndarray:
    """Per-frame pitch over one region, NaN at unvoiced frames."""
    frames = frame_region(clip, start, length, frame_ms=frame_ms, hop_ms=hop_ms)
    vals = np.full(len(frames), np.nan)
    for i, fr in enumerate(frames):
        f0 = estimate_pitch(fr, fmin=fmin, fmax=fmax)
        if f0 is not None:
            vals[i] = f0
    return vals


def assemble(
    clip: AudioClip,
    scheme: SegmentationScheme,
    include_hist: bool = False,
    hist_a: float = 50.0,
    hist_b: float = 500.0,
    hist_h: float = 50.0,
    hist_segments: Optional[int] = None,
    frame_ms: float = 25.0,
    hop_ms: float = 10.0,
    pitch_fmin: float = 50.0,
    pitch_fmax: float = 500.0,
    label: Optional[str] = None,
) -> UtteranceFeatureVector:
    """Extract the full feature vector for one utterance.

    Functionals are computed per segment of `scheme`. Histograms, when
    enabled, use the same segments under rti; under gti (or when
    `hist_segments` overrides the count) the histograms come from their
    own equal-time split, defaulting to 3 slices, and are appended after
    all functional blocks under names "hseg<j>.hist.bin<k>". When the
    histogram split coincides with `scheme`, each segment's histogram
    follows its functional block directly.
    """
    segs = segment(clip, scheme, frame_ms=frame_ms)
    mats = [
        extract_lld_matrix(
            frame_region(clip, s.start_sample, s.length, frame_ms, hop_ms),
            fmin=pitch_fmin,
            fmax=pitch_fmax,
        )
        for s in segs
    ]

    hist_matched = False
    n_hist = 0
    if include_hist:
        n_hist = histogram_bin_count(hist_a, hist_b, hist_h)
        hseg_count = (
            hist_segments
            if hist_segments is not None
            else (scheme.n_segments if scheme.kind == "rti" else 3)
        )
        hist_matched = scheme.kind == "rti" and hseg_count == scheme.n_segments

    blocks: list[np.ndarray] = []
    names: list[str] = []
    for i, mat in enumerate(mats):
        contours = mat.contours
        seg_stats = np.concatenate(
            [functionals(contours[:, j]) for j in range(contours.shape[1])]
        )
        blocks.append(seg_stats)
        names.extend(
            f"seg{i}.{stream}.{fn}"
            for stream in ALL_STREAM_NAMES
            for fn in FUNCTIONAL_NAMES
        )
        if include_hist and hist_matched:
            blocks.append(pitch_histogram(mat.pitch_values(), hist_a, hist_b, hist_h))
            names.extend(f"seg{i}.hist.bin{k:02d}" for k in range(n_hist))

    if include_hist and not hist_matched:
        hsegs = segment(clip, SegmentationScheme.rti(hseg_count), frame_ms=frame_ms)
        for j, hs in enumerate(hsegs):
            pitches = _region_pitches(
                clip, hs.start_sample, hs.length, frame_ms, hop_ms,
                pitch_fmin, pitch_fmax,
            )
            blocks.append(pitch_histogram(pitches, hist_a, hist_b, hist_h))
            names.extend(f"hseg{j}.hist.bin{k:02d}" for k in range(n_hist))

    return UtteranceFeatureVector(
        values=np.concatenate(blocks),
        layout=tuple(names),
        source_id=clip.source_id,
        label=label,
    )


def feature_dim(
    scheme: SegmentationScheme,
    include_hist: bool = False,
    hist_a: float = 50.0,
    hist_b: float = 500.0,
    hist_h: float = 50.0,
    hist_segments: Optional[int] = None,
) -> int:
    """Dimensionality assemble() will produce for this configuration."""
    dim = scheme.n_segments * len(ALL_STREAM_NAMES) * len(FUNCTIONAL_NAMES)
    if include_hist:
        hseg_count = (
            hist_segments
            if hist_segments is not None
            else (scheme.n_segments if scheme.kind == "rti" else 3)
        )
        dim += hseg_count * histogram_bin_count(hist_a, hist_b, hist_h)
    return dim


def save_feature_csv(path, vectors: Iterable[UtteranceFeatureVector], metadata=None):
    """Write vectors to CSV, one utterance per row.

    Leading "# key=value" comment lines carry provenance (typically the
    extraction config); the header row is source_id, label, then the
    layout names. All vectors must share one layout.
    """
    vectors = list(vectors)
    if not vectors:
        raise ValueError("no feature vectors to save")
    layout = vectors[0].layout
    for v in vectors:
        if v.layout != layout:
            raise ValueError(f"mixed layouts in cache ({v.source_id})")
    with open(path, "w", newline="") as fh:
        for key in sorted(metadata or {}):
            fh.write(f"# {key}={metadata[key]}\n")
        writer = csv.writer(fh)
        writer.writerow(["source_id", "label", *layout])
        for v in vectors:
            writer.writerow([v.source_id, v.label or "", *v.values.tolist()])


def load_feature_csv(path) -> tuple[list[UtteranceFeatureVector], dict]:
    """Read a feature cache written by save_feature_csv.

    Returns (vectors, metadata). Raises ValueError on a malformed header
    or rows whose width disagrees with the layout.
    """
    metadata = {}
    with open(path, newline="") as fh:
        lines = fh.readlines()
    body_start = 0
    for line in lines:
        if not line.startswith("#"):
            break
        body_start += 1
        stripped = line.lstrip("#").strip()
        if "=" in stripped:
            key, _, value = stripped.partition("=")
            metadata[key.strip()] = value.strip()
    rows = list(csv.reader(lines[body_start:]))
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError(f"{path}: no header row")
    header = rows[0]
    if header[:2] != ["source_id", "label"] or len(header) < 3:
        raise ValueError(f"{path}: header must be source_id,label,<feature names>")
    layout = tuple(header[2:])
    vectors = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(
                f"{path}: row {lineno} has {len(row)} fields, expected {len(header)}"
            )
        vectors.append(
            UtteranceFeatureVector(
                values=np.array([float(c) for c in row[2:]]),
                layout=layout,
                source_id=row[0],
                label=row[1] or None,
            )
        )
    if not vectors:
        raise ValueError(f"{path}: cache holds no feature rows")
    return vectors, metadata
