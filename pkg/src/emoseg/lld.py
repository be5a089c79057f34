"""Frame-level low-level descriptors.

Sixteen descriptors per frame: zero-crossing rate, RMS energy,
autocorrelation pitch (Hz, 0 when unvoiced), harmonics-to-noise ratio
(dB, 0 when unvoiced), and MFCC 1-12. Stacking frames gives 16 contours
per region; first-order regression deltas double that to 32.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
import scipy.fft

from .audio import Frame

#: Base contour order. Deltas follow in the same order, prefixed with "d".
STREAM_NAMES = (
    "zcr",
    "rms",
    "pitch",
    "hnr",
    "mfcc01",
    "mfcc02",
    "mfcc03",
    "mfcc04",
    "mfcc05",
    "mfcc06",
    "mfcc07",
    "mfcc08",
    "mfcc09",
    "mfcc10",
    "mfcc11",
    "mfcc12",
)
ALL_STREAM_NAMES = STREAM_NAMES + tuple(f"d{name}" for name in STREAM_NAMES)

PREEMPHASIS = 0.97
N_MEL_FILTERS = 26
N_MFCC = 12
LOG_FLOOR = 1e-10

VOICING_THRESHOLD = 0.45
SILENCE_FLOOR = 1e-4
HNR_CLAMP_DB = 100.0


def zcr(frame: Frame) -> float:
    """Zero-crossing rate: sign changes per sample step, in [0, 1].

    A zero sample inherits the sign of the most recent nonzero sample, so
    a touch-and-go contact with zero counts as a single crossing and a
    leading run of zeros counts none.
    """
    x = frame.samples
    if x.size < 2:
        return 0.0
    signs = np.sign(x)
    nonzero = signs != 0
    if not nonzero.any():
        return 0.0
    # Forward-fill zeros with the previous nonzero sign; leading zeros fall
    # back to index 0, whose sign is 0, so they stay signless.
    idx = np.where(nonzero, np.arange(x.size), 0)
    np.maximum.accumulate(idx, out=idx)
    filled = signs[idx]
    changes = np.count_nonzero(filled[1:] != filled[:-1])
    return changes / (x.size - 1)


def rms_energy(frame: Frame) -> float:
    """Root-mean-square amplitude of the frame."""
    x = frame.samples
    return float(np.sqrt(np.mean(x * x)))


def acf(frame: Frame, lag: int) -> float:
    """Length-compensated autocorrelation at an integer lag.

    acf(tau) = 1/(N-1-tau) * sum_{m=0}^{N-1-tau} x[m] x[m+tau]. The
    divisor undercounts the N-tau summed terms by one; this matches the
    estimator the HNR definition below is stated in, so it is kept as is.
    """
    x = frame.samples
    n = x.size
    if not 0 <= lag <= n - 2:
        raise ValueError(f"lag must lie in [0, {n - 2}] for a {n}-sample frame")
    return float(np.dot(x[: n - lag], x[lag:]) / (n - 1 - lag))


def _raw_autocorr(x: np.ndarray) -> np.ndarray:
    """Plain (un-normalized) linear autocorrelation r[tau] for tau in [0, N)."""
    n = x.size
    nfft = 1 << max(1, (2 * n - 2).bit_length())  # >= 2N-1 avoids circular wrap
    spec = np.fft.rfft(x, nfft)
    r = np.fft.irfft(spec * np.conj(spec), nfft)[:n]
    return r


def _pitch_candidate(
    x: np.ndarray, sample_rate: int, fmin: float, fmax: float
) -> tuple[int, float, float]:
    """Best pitch lag in the search band.

    Returns (integer lag, parabolic-refined lag, peak score). Works on the
    autocorrelation of the mean-subtracted, Hamming-windowed frame divided
    by the window's own autocorrelation, so a periodic frame scores close
    to 1 at its period anywhere in the band instead of decaying with lag.
    That normalization overshoots 1 slightly at period multiples, so the
    winner is the smallest local-maximum lag reaching 85% of the band
    ceiling (capped at 1); a plain argmax would favor subharmonics.
    """
    n = x.size
    if not 0 < fmin < fmax:
        raise ValueError(f"need 0 < fmin < fmax, got ({fmin}, {fmax})")
    lag_min = max(2, int(np.ceil(sample_rate / fmax)))
    lag_max = int(sample_rate // fmin)
    if lag_max > n - 2:
        raise ValueError(
            f"{n}-sample frame too short for fmin={fmin} Hz "
            f"(needs lags up to {lag_max})"
        )
    if lag_min > lag_max:
        raise ValueError(
            f"empty lag range [{lag_min}, {lag_max}] at {sample_rate} Hz"
        )
    w = np.hamming(n)
    rx = _raw_autocorr((x - x.mean()) * w)
    if rx[0] <= 0.0:
        return lag_min, float(lag_min), 0.0
    rw = _raw_autocorr(w)
    q = (rx / np.maximum(rw, 1e-12)) / (rx[0] / rw[0])
    band = q[lag_min : lag_max + 1]
    threshold = 0.85 * min(float(band.max()), 1.0)
    inner = band[1:-1]
    peaks = np.where(
        (inner >= band[:-2]) & (inner >= band[2:]) & (inner >= threshold)
    )[0]
    # Band-edge maxima leave no interior peak; fall back to the argmax.
    best = int(peaks[0]) + 1 if peaks.size else int(np.argmax(band))
    lag = lag_min + best
    score = float(q[lag])
    # Parabolic refinement; neighbors exist since lag >= 2 and lag <= n - 2.
    ym, y0, yp = q[lag - 1], q[lag], q[lag + 1]
    denom = ym - 2.0 * y0 + yp
    shift = 0.0 if denom == 0.0 else 0.5 * (ym - yp) / denom
    shift = float(np.clip(shift, -0.5, 0.5))
    return lag, lag + shift, score


def estimate_pitch(
    frame: Frame,
    fmin: float = 50.0,
    fmax: float = 500.0,
    voicing_threshold: float = VOICING_THRESHOLD,
    silence_floor: float = SILENCE_FLOOR,
) -> Optional[float]:
    """Fundamental frequency in Hz, or None for an unvoiced frame.

    A frame is unvoiced when its RMS falls below `silence_floor` or the
    normalized autocorrelation peak score in the lag band for [fmin, fmax]
    stays below `voicing_threshold`.
    """
    f0_lag = _voiced_lag(frame, fmin, fmax, voicing_threshold, silence_floor)
    if f0_lag is None:
        return None
    _, refined = f0_lag
    return frame.sample_rate / refined


def _voiced_lag(
    frame: Frame,
    fmin: float,
    fmax: float,
    voicing_threshold: float = VOICING_THRESHOLD,
    silence_floor: float = SILENCE_FLOOR,
) -> Optional[tuple[int, float]]:
    """(integer lag, refined lag) when voiced, else None."""
    if rms_energy(frame) < silence_floor:
        return None
    lag, refined, score = _pitch_candidate(
        frame.samples, frame.sample_rate, fmin, fmax
    )
    if score < voicing_threshold:
        return None
    return lag, refined


def hnr(frame: Frame, t0: int) -> float:
    """Harmonics-to-noise ratio in dB at pitch lag t0.

    10 log10(acf(t0) / (acf(0) - acf(t0))), clamped to +-100 dB. The
    length-compensated acf can exceed acf(0) on near-periodic frames,
    which lands on the positive clamp.
    """
    x = frame.samples
    n = x.size
    if not 1 <= t0 <= n - 2:
        raise ValueError(f"t0 must lie in [1, {n - 2}] for a {n}-sample frame")
    r0 = acf(frame, 0)
    rt = acf(frame, int(t0))
    if rt <= 0.0 or r0 <= 0.0:
        return -HNR_CLAMP_DB
    noise = r0 - rt
    if noise <= 0.0:
        return HNR_CLAMP_DB
    return float(np.clip(10.0 * np.log10(rt / noise), -HNR_CLAMP_DB, HNR_CLAMP_DB))


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


@lru_cache(maxsize=32)
def _mel_filterbank(sample_rate: int, nfft: int) -> np.ndarray:
    """Triangular mel filterbank, shape (N_MEL_FILTERS, nfft//2 + 1).

    Filter edges are spaced uniformly on the mel scale from 0 Hz to the
    Nyquist frequency; weights are evaluated at the FFT bin frequencies.
    """
    edges_mel = np.linspace(_hz_to_mel(0.0), _hz_to_mel(sample_rate / 2.0), N_MEL_FILTERS + 2)
    edges = _mel_to_hz(edges_mel)
    freqs = np.arange(nfft // 2 + 1) * (sample_rate / nfft)
    lower = edges[:-2, None]
    center = edges[1:-1, None]
    upper = edges[2:, None]
    rising = (freqs[None, :] - lower) / (center - lower)
    falling = (upper - freqs[None, :]) / (upper - center)
    return np.maximum(0.0, np.minimum(rising, falling))


def mfcc(frame: Frame) -> np.ndarray:
    """Mel-frequency cepstral coefficients 1..12 (the energy term c0 is dropped).

    Chain: pre-emphasis (0.97) -> Hamming window -> magnitude spectrum on
    the smallest power-of-two FFT covering the frame -> 26 triangular mel
    filters spanning 0..Nyquist -> natural log with floor 1e-10 ->
    orthonormal DCT-II.
    """
    x = frame.samples
    y = np.empty_like(x)
    y[0] = x[0]
    y[1:] = x[1:] - PREEMPHASIS * x[:-1]
    y *= np.hamming(y.size)
    nfft = 1 << max(1, (y.size - 1).bit_length())
    mag = np.abs(np.fft.rfft(y, nfft))
    energies = _mel_filterbank(frame.sample_rate, nfft) @ mag
    logged = np.log(np.maximum(energies, LOG_FLOOR))
    ceps = scipy.fft.dct(logged, type=2, norm="ortho")
    return ceps[1 : N_MFCC + 1].copy()


def delta(contour: np.ndarray) -> np.ndarray:
    """First-order regression delta with a two-frame window.

    d[t] = sum_{k=1,2} k * (x[t+k] - x[t-k]) / (2 * (1^2 + 2^2)); the
    contour is edge-replicated so the output matches the input length.
    """
    x = np.asarray(contour, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("delta of an empty contour")
    p = np.pad(x, 2, mode="edge")
    return (1.0 * (p[3:-1] - p[1:-3]) + 2.0 * (p[4:] - p[:-4])) / 10.0


@dataclass(frozen=True, eq=False)
class LldMatrix:
    """Descriptor contours for one framed region.

    `base` is (n_frames, 16) in STREAM_NAMES order; `delta` mirrors it.
    `voiced` flags the frames whose pitch/HNR entries are real estimates;
    unvoiced frames hold 0 Hz and 0 dB placeholders.
    """

    base: np.ndarray
    delta: np.ndarray
    voiced: np.ndarray

    @property
    def n_frames(self) -> int:
        return self.base.shape[0]

    @property
    def contours(self) -> np.ndarray:
        """(n_frames, 32) matrix: base streams then delta streams."""
        return np.hstack([self.base, self.delta])

    def pitch_values(self) -> np.ndarray:
        """Pitch contour with NaN at unvoiced frames (for histogramming)."""
        return np.where(self.voiced, self.base[:, 2], np.nan)


def extract_lld_matrix(
    frames: Sequence[Frame], fmin: float = 50.0, fmax: float = 500.0
) -> LldMatrix:
    """Compute the 16 base + 16 delta contours for a frame sequence.

    All frames must share one length and sample rate (one framing call).
    [fmin, fmax] bounds the pitch search; raises if the frames are too
    short to reach the fmin lag.
    """
    frames = list(frames)
    if not frames:
        raise ValueError("cannot extract descriptors from zero frames")
    n = len(frames[0])
    rate = frames[0].sample_rate
    for fr in frames:
        if len(fr) != n or fr.sample_rate != rate:
            raise ValueError("frames differ in length or sample rate")
    base = np.zeros((len(frames), len(STREAM_NAMES)))
    voiced = np.zeros(len(frames), dtype=bool)
    for i, fr in enumerate(frames):
        base[i, 0] = zcr(fr)
        base[i, 1] = rms_energy(fr)
        f0_lag = _voiced_lag(fr, fmin, fmax)
        if f0_lag is not None:
            lag, refined = f0_lag
            base[i, 2] = rate / refined
            base[i, 3] = hnr(fr, lag)
            voiced[i] = True
        base[i, 4:] = mfcc(fr)
    deltas = np.column_stack([delta(base[:, j]) for j in range(base.shape[1])])
    return LldMatrix(base=base, delta=deltas, voiced=voiced)
