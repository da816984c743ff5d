"""Peripheral ear model: STFT, ERB band partition and outer/middle-ear weighting.

The output is a pair of complex spectrograms (frames x bins), one per
channel, where every bin has been scaled by the ear gain of the ERB band it
belongs to.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InfeasiblePartition, InputTooShort, ShapeMismatch
from .signal_io import StereoBuffer

EAR_MODEL_MIN_FREQ = 50.0


@dataclass(frozen=True)
class StftConfig:
    block_size: int = 1024
    hop: int = 512

    def __post_init__(self):
        if self.block_size <= 0 or not 0 < self.hop <= self.block_size:
            raise ValueError(f"need block_size > 0 and 0 < hop <= block_size, "
                             f"got {self.block_size}/{self.hop}")
        if self.block_size % 2:
            raise ValueError("block_size must be even")

    @property
    def n_bins(self) -> int:
        return self.block_size // 2 + 1

    def window(self) -> np.ndarray:
        return np.hanning(self.block_size)

    def n_frames(self, n_samples: int) -> int:
        if n_samples < self.block_size:
            return 0
        return (n_samples - self.block_size) // self.hop + 1

    def frame_duration(self, sample_rate: int) -> float:
        return self.block_size / sample_rate

    def frame_times(self, n_frames: int, sample_rate: int) -> np.ndarray:
        """Start time of each frame in seconds."""
        return np.arange(n_frames) * self.hop / sample_rate


def erb_number(f):
    """ERB-number (Cams) of frequency ``f`` in Hz, Glasberg & Moore."""
    return 21.4 * np.log10(1.0 + 0.00437 * np.asarray(f, dtype=np.float64))


def erb_number_to_hz(e):
    return (10.0 ** (np.asarray(e, dtype=np.float64) / 21.4) - 1.0) / 0.00437


def ear_weight_db(f):
    """Outer/middle-ear magnitude response in dB (PEAQ ear model)."""
    khz = np.asarray(f, dtype=np.float64) / 1000.0
    return (-0.6 * 3.64 * khz ** -0.8
            + 6.5 * np.exp(-0.6 * (khz - 3.3) ** 2)
            - 1e-3 * khz ** 3.6)


@dataclass(frozen=True, eq=False)
class BandPartition:
    """Contiguous grouping of the one-sided STFT bins into ERB bands.

    ``edges_hz`` holds the B+1 nominal band edges; ``bin_edges`` the B+1 bin
    indices so that band ``b`` spans ``bin_edges[b]:bin_edges[b+1]``.
    """

    edges_hz: np.ndarray
    bin_edges: np.ndarray
    sample_rate: int
    block_size: int

    @property
    def n_bands(self) -> int:
        return len(self.bin_edges) - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    def band_slice(self, b: int) -> slice:
        return slice(int(self.bin_edges[b]), int(self.bin_edges[b + 1]))

    def band_of_bin(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_bands), self.widths)

    def center_frequencies(self) -> np.ndarray:
        lo, hi = self.edges_hz[:-1], self.edges_hz[1:]
        centers = np.sqrt(lo * hi)
        # band 0 holds DC, where the geometric mean collapses to 0
        centers[0] = 0.5 * (lo[0] + hi[0])
        return np.maximum(centers, EAR_MODEL_MIN_FREQ)

    def ear_gains(self) -> np.ndarray:
        """Linear per-band ear gain, evaluated at the band centers."""
        return 10.0 ** (ear_weight_db(self.center_frequencies()) / 20.0)


def erb_partition(sample_rate: int, n_bands: int = 20, f_min: float = 0.0,
                  block_size: int = 1024) -> BandPartition:
    """Split bins ``0..block_size/2`` into ``n_bands`` equal-ERB bands.

    Bins are assigned by center frequency. Bins below ``f_min`` fall into the
    first band and the Nyquist bin into the last, so every bin is covered.
    """
    nyquist = sample_rate / 2.0
    if n_bands < 1:
        raise InfeasiblePartition(f"need at least one band, got {n_bands}")
    if not 0.0 <= f_min < nyquist:
        raise InfeasiblePartition(f"f_min={f_min} outside [0, {nyquist})")
    cams = np.linspace(erb_number(f_min), erb_number(nyquist), n_bands + 1)
    edges = erb_number_to_hz(cams)
    edges[0], edges[-1] = f_min, nyquist

    bin_freqs = np.arange(block_size // 2 + 1) * sample_rate / block_size
    band = np.clip(np.searchsorted(edges, bin_freqs, side="right") - 1, 0, n_bands - 1)
    counts = np.bincount(band, minlength=n_bands)
    if np.any(counts == 0):
        empty = np.flatnonzero(counts == 0).tolist()
        raise InfeasiblePartition(f"bands {empty} contain no bins "
                                  f"(M={block_size}, Fs={sample_rate}, B={n_bands})")
    bin_edges = np.concatenate([[0], np.cumsum(counts)])
    return BandPartition(edges, bin_edges, int(sample_rate), int(block_size))


def stft_analyze(buf: StereoBuffer, cfg: StftConfig = StftConfig()):
    """Hann-windowed one-sided STFT of both channels.

    Returns ``(left, right)``, each complex with shape
    ``(n_frames, block_size // 2 + 1)``. Trailing samples that do not fill a
    whole block are dropped.
    """
    if len(buf) < cfg.block_size:
        raise InputTooShort(f"{len(buf)} samples < block size {cfg.block_size}")
    win = cfg.window()
    out = []
    for x in (buf.left, buf.right):
        frames = sliding_window_view(x, cfg.block_size)[::cfg.hop]
        out.append(np.fft.rfft(frames * win, axis=-1))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class BandedSpectrogram:
    left: np.ndarray
    right: np.ndarray
    partition: BandPartition
    config: StftConfig

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise ShapeMismatch(f"channel spectrograms differ: "
                                f"{self.left.shape} vs {self.right.shape}")

    @property
    def n_frames(self) -> int:
        return self.left.shape[0]

    @property
    def sample_rate(self) -> int:
        return self.partition.sample_rate

    def swapped(self) -> BandedSpectrogram:
        return BandedSpectrogram(self.right, self.left, self.partition, self.config)


def apply_ear_weighting(spec, part: BandPartition,
                        cfg: StftConfig = StftConfig()) -> BandedSpectrogram:
    left, right = spec
    n_bins = part.bin_edges[-1]
    if left.shape[-1] != n_bins or right.shape != left.shape:
        raise ShapeMismatch(f"spectrogram shapes {left.shape}/{right.shape} "
                            f"do not match a {n_bins}-bin partition")
    gain = part.ear_gains()[part.band_of_bin()]
    return BandedSpectrogram(left * gain, right * gain, part, cfg)


def peripheral_model(buf: StereoBuffer, cfg: StftConfig = StftConfig(),
                     n_bands: int = 20, f_min: float = 0.0) -> BandedSpectrogram:
    """Run STFT, ERB grouping and ear weighting on a stereo buffer."""
    part = erb_partition(buf.sample_rate, n_bands, f_min, cfg.block_size)
    return apply_ear_weighting(stft_analyze(buf, cfg), part, cfg)
