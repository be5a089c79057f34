"""Shared fixtures-in-spirit: tone/frame builders and raw WAV writers."""

from __future__ import annotations

import struct

import numpy as np
from scipy.io import wavfile

from emoseg import AudioClip, Frame


def sine(freq, n, rate, amp=0.5, phase=0.0):
    t = np.arange(n) / rate
    return amp * np.sin(2.0 * np.pi * freq * t + phase)


def make_frame(samples, rate=16000):
    return Frame(samples=np.asarray(samples, dtype=np.float64), sample_rate=rate)


def make_clip(samples, rate=16000, source_id="clip"):
    return AudioClip(
        samples=np.asarray(samples, dtype=np.float64),
        sample_rate=rate,
        source_id=source_id,
    )


def sine_clip(freq, n=8000, rate=16000, amp=0.5, source_id="tone"):
    return make_clip(sine(freq, n, rate, amp=amp), rate, source_id)


def sine_frame(freq, n=400, rate=16000, amp=0.5, phase=0.0):
    return make_frame(sine(freq, n, rate, amp=amp, phase=phase), rate)


def write_wav(path, rate, samples, dtype):
    """Write via scipy for the dtypes it supports directly."""
    wavfile.write(str(path), rate, np.asarray(samples, dtype=dtype))


def write_wav_24bit(path, rate, float_samples):
    """Hand-rolled 24-bit PCM RIFF writer (scipy cannot write 24-bit)."""
    x = np.clip(np.asarray(float_samples, dtype=np.float64), -1.0, 1.0)
    ints = np.round(x * (2**23 - 1)).astype(np.int64)
    data = b"".join(int(v & 0xFFFFFF).to_bytes(3, "little") for v in ints)
    header = b"RIFF" + struct.pack("<I", 36 + len(data)) + b"WAVE"
    fmt = b"fmt " + struct.pack("<IHHIIHH", 16, 1, 1, rate, rate * 3, 3, 24)
    with open(path, "wb") as fh:
        fh.write(header + fmt + b"data" + struct.pack("<I", len(data)) + data)
