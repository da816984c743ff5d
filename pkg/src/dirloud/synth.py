"""Deterministic amplitude-panned test signals and stereo-image degradations.

All degradations are linear channel mixes, so the panning index of the
result is known in closed form (see :meth:`PanLaw.index`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadInterval
from .panning import closed_form_index
from .signal_io import DEFAULT_RATE, StereoBuffer


@dataclass(frozen=True)
class PanLaw:
    g_left: float
    g_right: float

    def __post_init__(self):
        if self.g_left < 0 or self.g_right < 0 or self.g_left == self.g_right == 0:
            raise ValueError(f"gains must be >= 0 and not both zero: {self}")

    @classmethod
    def constant_power(cls, g_left: float, g_right: float) -> PanLaw:
        """Scale a gain ratio onto ``g_left**2 + g_right**2 == 1``."""
        norm = np.hypot(g_left, g_right)
        return cls(float(g_left / norm), float(g_right / norm))

    @classmethod
    def from_index(cls, psi: float) -> PanLaw:
        """Constant-power gains whose closed-form panning index is ``psi``."""
        if not -1.0 <= psi <= 1.0:
            raise ValueError(f"panning index {psi} outside [-1, 1]")
        # (gl - gr)^2 = |psi| with gl^2 + gr^2 = 1  =>  gl * gr = (1 - |psi|) / 2
        s = np.sqrt(1.0 + (1.0 - abs(psi)))
        d = np.sqrt(abs(psi))
        big, small = (s + d) / 2.0, (s - d) / 2.0
        return cls(big, small) if psi <= 0 else cls(small, big)

    @property
    def index(self) -> float:
        return float(closed_form_index(self.g_left, self.g_right))


def sine(freq: float, duration: float, sample_rate: int = DEFAULT_RATE,
         amplitude: float = 1.0) -> np.ndarray:
    t = np.arange(int(round(duration * sample_rate))) / sample_rate
    return amplitude * np.sin(2.0 * np.pi * freq * t)


def white_noise(duration: float, sample_rate: int = DEFAULT_RATE, seed: int = 0,
                amplitude: float = 0.25) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return amplitude * rng.standard_normal(int(round(duration * sample_rate)))


def panned_source(mono, law: PanLaw, sample_rate: int = DEFAULT_RATE) -> StereoBuffer:
    """Place a mono signal in the stereo field with gains ``law``."""
    mono = np.asarray(mono, dtype=np.float64)
    if mono.size == 0:
        raise ValueError("empty source")
    return StereoBuffer(law.g_left * mono, law.g_right * mono, sample_rate)


def panned_noise(law: PanLaw, duration: float = 1.0, sample_rate: int = DEFAULT_RATE,
                 seed: int = 0, amplitude: float = 0.25) -> StereoBuffer:
    if duration <= 0:
        raise ValueError("duration must be positive")
    return panned_source(white_noise(duration, sample_rate, seed, amplitude), law, sample_rate)


def panned_sine(law: PanLaw, freq: float, duration: float = 1.0,
                sample_rate: int = DEFAULT_RATE, amplitude: float = 0.5) -> StereoBuffer:
    if duration <= 0:
        raise ValueError("duration must be positive")
    return panned_source(sine(freq, duration, sample_rate, amplitude), law, sample_rate)


def _interval_mask(buf: StereoBuffer, intervals) -> np.ndarray:
    if intervals is None:
        return np.ones(len(buf), dtype=bool)
    if np.ndim(intervals) == 1:
        intervals = [intervals]
    t = np.arange(len(buf)) / buf.sample_rate
    mask = np.zeros(len(buf), dtype=bool)
    for t0, t1 in intervals:
        if not 0 <= t0 < t1 <= buf.duration:
            raise BadInterval(f"interval ({t0}, {t1}) not within [0, {buf.duration}]")
        mask |= (t >= t0) & (t < t1)
    return mask


def pan_collapse(buf: StereoBuffer, alpha: float, intervals=None) -> StereoBuffer:
    """Pull each channel toward the mid signal ``(L+R)/2`` by ``alpha``.

    ``intervals`` is a ``(t0, t1)`` pair in seconds or a list of them; samples
    outside are left untouched. ``None`` means the whole buffer.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha} outside [0, 1]")
    mask = _interval_mask(buf, intervals)
    mid = 0.5 * (buf.left + buf.right)
    left = np.where(mask, (1.0 - alpha) * buf.left + alpha * mid, buf.left)
    right = np.where(mask, (1.0 - alpha) * buf.right + alpha * mid, buf.right)
    return StereoBuffer(left, right, buf.sample_rate)


def crosstalk(buf: StereoBuffer, beta: float) -> StereoBuffer:
    """Leak ``beta`` of each channel into the other."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta={beta} outside [0, 1]")
    return StereoBuffer(buf.left + beta * buf.right, buf.right + beta * buf.left,
                        buf.sample_rate)


def silence(duration: float = 1.0, sample_rate: int = DEFAULT_RATE) -> StereoBuffer:
    n = int(round(duration * sample_rate))
    return StereoBuffer(np.zeros(n), np.zeros(n), sample_rate)
