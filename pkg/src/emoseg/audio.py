"""WAV loading and fixed-hop frame slicing.

Accepts mono RIFF/WAVE files only: PCM 8/16/24/32-bit integer or IEEE
32-bit float. Integer samples are rescaled to [-1, 1]; multi-channel
files are rejected rather than silently downmixed, since channel mixing
changes every descriptor downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.io import wavfile


@dataclass(frozen=True, eq=False)
class AudioClip:
    """A mono utterance: float64 samples in [-1, 1] at the file's native rate."""

    samples: np.ndarray
    sample_rate: int
    source_id: str = ""

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("clip requires a non-empty 1-D sample buffer")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(s)):
            raise ValueError("clip contains non-finite samples")
        if np.abs(s).max() > 1.0 + 1e-12:
            raise ValueError("clip samples must lie in [-1, 1]")
        object.__setattr__(self, "samples", s)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def __len__(self) -> int:
        return self.samples.size


@dataclass(frozen=True, eq=False)
class Frame:
    """One analysis window.

    `start_sample` is the offset of the frame within the region that was
    framed (not within the whole clip), so frame k starts at k * hop.
    """

    samples: np.ndarray
    sample_rate: int
    index: int = 0
    start_sample: int = 0

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("frame requires a non-empty 1-D sample buffer")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "samples", s)

    def __len__(self) -> int:
        return self.samples.size


def samples_per(duration_ms: float, sample_rate: int) -> int:
    """Window/hop length in samples for a duration given in milliseconds."""
    return int(round(duration_ms * sample_rate / 1000.0))


def load_wav(path) -> AudioClip:
    """Read a mono WAV file into an AudioClip.

    Raises FileNotFoundError for a missing path, ValueError for malformed
    or truncated files, multi-channel audio, and unsupported encodings.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such audio file: {path}")
    try:
        rate, raw = wavfile.read(str(path))
    except Exception as exc:
        # scipy surfaces malformed files through assorted exception types
        # (ValueError, struct.error, even UnboundLocalError on a headerless
        # chunk soup); fold them into one contract.
        raise ValueError(f"{path.name}: unreadable WAV ({exc})") from exc
    if raw.ndim != 1:
        raise ValueError(
            f"{path.name}: expected mono audio, found {raw.shape[1]} channels"
        )
    if raw.dtype == np.uint8:
        # 8-bit WAV is unsigned with midpoint 128.
        samples = (raw.astype(np.float64) - 128.0) / 128.0
    elif raw.dtype in (np.dtype(np.int16), np.dtype(np.int32)):
        # 24-bit PCM arrives as int32 shifted left 8 bits, so dividing by
        # 2**31 still maps full scale to [-1, 1).
        samples = raw.astype(np.float64) / float(1 << (8 * raw.dtype.itemsize - 1))
    elif raw.dtype in (np.dtype(np.float32), np.dtype(np.float64)):
        samples = np.clip(raw.astype(np.float64), -1.0, 1.0)
    else:
        raise ValueError(f"{path.name}: unsupported sample encoding {raw.dtype}")
    if samples.size == 0:
        raise ValueError(f"{path.name}: file holds no samples")
    return AudioClip(samples=samples, sample_rate=int(rate), source_id=path.stem)


def frame_region(
    clip: AudioClip,
    start: int,
    length: int,
    frame_ms: float = 25.0,
    hop_ms: float = 10.0,
) -> list[Frame]:
    """Slice clip[start:start+length] into overlapping frames.

    Frame and hop lengths are rounded to the nearest sample at the clip's
    native rate. Only complete frames are emitted; a region shorter than
    one frame yields an empty list. Frames are views into the clip buffer.
    """
    if not frame_ms > hop_ms > 0:
        raise ValueError(
            f"require frame_ms > hop_ms > 0, got frame_ms={frame_ms}, hop_ms={hop_ms}"
        )
    if start < 0 or length < 0 or start + length > len(clip):
        raise ValueError(
            f"region [{start}, {start + length}) outside clip of {len(clip)} samples"
        )
    n = samples_per(frame_ms, clip.sample_rate)
    hop = samples_per(hop_ms, clip.sample_rate)
    if n < 2 or hop < 1:
        raise ValueError(
            f"frame of {n} and hop of {hop} samples are too short at "
            f"{clip.sample_rate} Hz"
        )
    if length < n:
        return []
    count = (length - n) // hop + 1
    region = clip.samples[start : start + length]
    return [
        Frame(
            samples=region[k * hop : k * hop + n],
            sample_rate=clip.sample_rate,
            index=k,
            start_sample=k * hop,
        )
        for k in range(count)
    ]


def frame_clip(clip: AudioClip, frame_ms: float = 25.0, hop_ms: float = 10.0) -> list[Frame]:
    """Frame the whole clip. Shorthand for frame_region over [0, len)."""
    return frame_region(clip, 0, len(clip), frame_ms=frame_ms, hop_ms=hop_ms)
