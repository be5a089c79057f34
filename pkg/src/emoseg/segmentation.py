"""Time-based utterance segmentation.

Two schemes: the whole utterance as one segment ("gti"), or n equal-time
segments ("rti"). Boundaries sit at floor(i * total / n), which keeps
every boundary within one sample of the exact equal split; interior
segment lengths therefore differ by at most one sample.
"""

from __future__ import annotations

from dataclasses import dataclass

from .audio import AudioClip, samples_per


@dataclass(frozen=True)
class SegmentationScheme:
    """Either gti (one global segment) or rti with n >= 1 time slices."""

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("gti", "rti"):
            raise ValueError(f"unknown segmentation kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"segment count must be >= 1, got {self.n}")
        if self.kind == "gti" and self.n != 1:
            raise ValueError("gti admits exactly one segment")

    @classmethod
    def gti(cls) -> "SegmentationScheme":
        return cls(kind="gti")

    @classmethod
    def rti(cls, n: int) -> "SegmentationScheme":
        return cls(kind="rti", n=n)

    @property
    def n_segments(self) -> int:
        return 1 if self.kind == "gti" else self.n


@dataclass(frozen=True)
class Segment:
    index: int
    start_sample: int
    length: int

    @property
    def end_sample(self) -> int:
        return self.start_sample + self.length


def segment(
    clip: AudioClip, scheme: SegmentationScheme, frame_ms: float = 25.0
) -> list[Segment]:
    """Split a clip into the scheme's contiguous segments.

    Segments tile [0, len(clip)) exactly. Raises if any segment is shorter
    than one analysis frame, naming the offending segment, since such a
    segment would contribute no frames downstream.
    """
    total = len(clip)
    n = scheme.n_segments
    bounds = [total * i // n for i in range(n + 1)]
    segs = [
        Segment(index=i, start_sample=bounds[i], length=bounds[i + 1] - bounds[i])
        for i in range(n)
    ]
    min_len = samples_per(frame_ms, clip.sample_rate)
    for s in segs:
        if s.length < min_len:
            raise ValueError(
                f"segment {s.index} of {clip.source_id or 'clip'} has "
                f"{s.length} samples, shorter than one {frame_ms} ms frame "
                f"({min_len} samples); use fewer segments or a longer clip"
            )
    return segs
