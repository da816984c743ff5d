"""Panning index per time-frequency bin and Gaussian direction windows."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .peripheral import BandedSpectrogram


@dataclass(frozen=True)
class DirectionBank:
    """Equally spaced panning directions over [-1, 1] and a shared window width."""

    n_directions: int = 22
    xi: float = 0.006

    def __post_init__(self):
        if self.n_directions < 2:
            raise ValueError(f"need at least 2 directions, got {self.n_directions}")
        if not self.xi > 0:
            raise ValueError(f"window width must be positive, got {self.xi}")

    @property
    def directions(self) -> np.ndarray:
        # written as (2j - (J-1)) / (J-1) so the grid is exactly antisymmetric
        j = np.arange(self.n_directions, dtype=np.float64)
        last = self.n_directions - 1
        return (2.0 * j - last) / last


def panning_index_bins(xl, xr) -> np.ndarray:
    """Panning index of complex bin pairs, -1 (left) .. +1 (right).

    With similarity ``psi = 2|XL XR*| / (|XL|^2 + |XR|^2)`` the index is
    ``(1 - psi) * sgn(|XR| - |XL|)``. ``1 - psi`` is evaluated as
    ``(|XL| - |XR|)^2 / (|XL|^2 + |XR|^2)``, which is the same quantity
    without the cancellation near the center. Bins with no energy in
    either channel get 0.
    """
    return closed_form_index(np.abs(np.asarray(xl)), np.abs(np.asarray(xr)))


def similarity(xl, xr) -> np.ndarray:
    """Inter-channel similarity ``2|XL XR*| / (|XL|^2 + |XR|^2)`` (0 where silent)."""
    cross = np.abs(np.asarray(xl) * np.conj(xr))
    total = np.abs(xl) ** 2 + np.abs(xr) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(total == 0, 0.0, 2.0 * cross / np.where(total == 0, 1.0, total))


def panning_index(spec: BandedSpectrogram) -> np.ndarray:
    """Panning index field (frames x bins) of a banded spectrogram."""
    return panning_index_bins(spec.left, spec.right)


def closed_form_index(g_left, g_right):
    """Panning index of content amplitude-panned with gains ``(g_left, g_right)``.

    Returns 0 where both gains are zero.
    """
    a = np.asarray(g_left, dtype=np.float64)
    b = np.asarray(g_right, dtype=np.float64)
    # divide by the larger magnitude first so tiny bins do not underflow
    peak = np.maximum(a, b)
    silent = peak == 0
    with np.errstate(invalid="ignore", divide="ignore"):
        a = a / np.where(silent, 1.0, peak)
        b = b / np.where(silent, 1.0, peak)
        spread = (a - b) ** 2 / (a * a + b * b)
    return np.where(silent, 0.0, np.sign(b - a) * spread)


def gaussian_window(psi, psi0, xi=0.006):
    return np.exp(-((np.asarray(psi) - psi0) ** 2) / (2.0 * xi))


def extract_directional(spec: BandedSpectrogram, field: np.ndarray,
                        bank: DirectionBank, j: int):
    """Weight both channels by the window of direction ``j``; returns ``(YL, YR)``."""
    theta = gaussian_window(field, bank.directions[j], bank.xi)
    return spec.left * theta, spec.right * theta
