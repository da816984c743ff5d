"""Directional loudness per ERB band and the frames x directions loudness map."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySubset, UsageError
from .panning import DirectionBank, extract_directional, panning_index
from .peripheral import BandedSpectrogram, BandPartition

DEFAULT_BANDS = tuple(range(7, 20))


@dataclass(frozen=True, eq=False)
class DirectionalLoudnessMap:
    """Loudness over time frames (rows) and panning directions (columns)."""

    values: np.ndarray
    directions: np.ndarray
    bands: tuple
    xi: float
    f_min: float = 0.0
    sample_rate: int = 48000
    block_size: int = 1024
    hop: int = 512

    @property
    def n_frames(self) -> int:
        return self.values.shape[0]

    @property
    def n_directions(self) -> int:
        return self.values.shape[1]

    @property
    def frame_duration(self) -> float:
        return self.block_size / self.sample_rate

    def frame_times(self) -> np.ndarray:
        return np.arange(self.n_frames) * self.hop / self.sample_rate

    def parameters(self) -> dict:
        return {
            "xi": self.xi,
            "n_directions": int(self.n_directions),
            "bands": [int(b) for b in self.bands],
            "f_min": self.f_min,
            "sample_rate": int(self.sample_rate),
            "block_size": int(self.block_size),
            "hop": int(self.hop),
        }

    def with_values(self, values) -> DirectionalLoudnessMap:
        return DirectionalLoudnessMap(np.asarray(values, dtype=np.float64), self.directions,
                                      self.bands, self.xi, self.f_min, self.sample_rate,
                                      self.block_size, self.hop)


def downmix(yl, yr):
    return yl + yr


def band_loudness(ydm, band: slice):
    """Per-frame loudness of one band: ``mean(|Y_DM|^2) ** 0.25`` over its bins."""
    power = np.abs(ydm[..., band]) ** 2
    if power.shape[-1] == 0:
        raise UsageError("band contains no bins")
    return np.mean(power, axis=-1) ** 0.25


def all_band_loudness(ydm, part: BandPartition) -> np.ndarray:
    """Loudness of every band at once, shape ``(n_frames, n_bands)``."""
    power = np.abs(ydm) ** 2
    sums = np.add.reduceat(power, part.bin_edges[:-1], axis=-1)
    return (sums / part.widths) ** 0.25


def _check_subset(subset, n_bands: int) -> tuple:
    subset = tuple(int(b) for b in subset)
    if not subset:
        raise EmptySubset("band subset is empty")
    bad = [b for b in subset if not 0 <= b < n_bands]
    if bad:
        raise UsageError(f"band indices {bad} outside 0..{n_bands - 1}")
    if len(set(subset)) != len(subset):
        raise UsageError(f"duplicate band indices in {subset}")
    return subset


def loudness_map(spec: BandedSpectrogram, field: np.ndarray | None = None,
                 bank: DirectionBank = DirectionBank(),
                 subset=DEFAULT_BANDS) -> DirectionalLoudnessMap:
    """Directional loudness map of a banded spectrogram.

    For each direction the spectrogram is windowed around that panning
    direction, the channels are summed, per-band loudness is taken and then
    averaged over the bands in ``subset`` (dividing by the subset size).
    """
    part = spec.partition
    subset = _check_subset(subset, part.n_bands)
    if field is None:
        field = panning_index(spec)
    values = np.empty((spec.n_frames, bank.n_directions))
    for j in range(bank.n_directions):
        ydm = downmix(*extract_directional(spec, field, bank, j))
        values[:, j] = all_band_loudness(ydm, part)[:, subset].mean(axis=1)
    return DirectionalLoudnessMap(values, bank.directions, subset, float(bank.xi),
                                  float(part.edges_hz[0]), part.sample_rate,
                                  spec.config.block_size, spec.config.hop)
