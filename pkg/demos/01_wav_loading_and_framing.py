#!/usr/bin/env python3
"""Load a PCM WAV file and cut it into overlapping analysis frames.

Writes a short synthetic tone to a temporary WAV, reads it back through
the package loader, and shows how the 25 ms / 10 ms framing convention
covers the signal.
"""

import tempfile
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from emoseg import frame_clip, load_wav, samples_per

rate = 16000
t = np.arange(int(0.6 * rate)) / rate
x = 0.5 * np.sin(2 * np.pi * 220.0 * t) * np.hanning(t.size)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "tone220.wav"
    wavfile.write(path, rate, (x * 32767).astype(np.int16))

    clip = load_wav(path)
    print(f"loaded {clip.source_id}: {clip.samples.size} samples "
          f"at {clip.sample_rate} Hz "
          f"({clip.samples.size / clip.sample_rate:.3f} s)")
    print(f"sample dtype {clip.samples.dtype}, "
          f"peak {np.abs(clip.samples).max():.4f} (normalized to [-1, 1])")

    frames = frame_clip(clip, frame_ms=25.0, hop_ms=10.0)
    flen = samples_per(clip.sample_rate, 25.0)
    hop = samples_per(clip.sample_rate, 10.0)
    print(f"\n25 ms frame = {flen} samples, 10 ms hop = {hop} samples")
    print(f"{len(frames)} frames cover the clip")

    for f in frames[:3]:
        print(f"  frame {f.index}: samples [{f.start_sample}, "
              f"{f.start_sample + f.samples.size}), "
              f"rms {np.sqrt(np.mean(f.samples ** 2)):.4f}")
    last = frames[-1]
    print(f"  ...")
    print(f"  frame {last.index}: starts at sample {last.start_sample}, "
          f"ends at {last.start_sample + last.samples.size} "
          f"(clip has {clip.samples.size})")

    # Every frame is full length; the ragged tail past the last full
    # frame is dropped rather than zero-padded.
    assert all(f.samples.size == flen for f in frames)
    tail = clip.samples.size - (last.start_sample + last.samples.size)
    print(f"\ntrailing {tail} samples (< one hop) are not framed")
