"""Directional loudness distortion between a reference and a signal under test."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, ParameterMismatch, ShapeMismatch
from .loudness import DirectionalLoudnessMap


@dataclass(frozen=True, eq=False)
class DldReport:
    dld: float
    per_direction: np.ndarray
    per_frame: np.ndarray
    parameters: dict

    @property
    def frames(self) -> int:
        return len(self.per_frame)

    @property
    def directions(self) -> int:
        return len(self.per_direction)

    def to_dict(self) -> dict:
        return {
            "dld": float(self.dld),
            "frames": self.frames,
            "directions": self.directions,
            "per_direction": [float(v) for v in self.per_direction],
            "per_frame": [float(v) for v in self.per_frame],
            "parameters": self.parameters,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _check_compatible(a: DirectionalLoudnessMap, b: DirectionalLoudnessMap):
    if a.values.shape != b.values.shape:
        raise ShapeMismatch(f"map shapes differ: {a.values.shape} vs {b.values.shape}")
    pa, pb = a.parameters(), b.parameters()
    if pa != pb or not np.array_equal(a.directions, b.directions):
        diff = sorted(k for k in pa if pa[k] != pb.get(k))
        raise ParameterMismatch(f"maps computed with different parameters: {diff or ['directions']}")


def map_difference(map_ref: DirectionalLoudnessMap,
                   map_sut: DirectionalLoudnessMap) -> DirectionalLoudnessMap:
    """Element-wise absolute difference of two compatible maps."""
    _check_compatible(map_ref, map_sut)
    return map_ref.with_values(np.abs(map_ref.values - map_sut.values))


def dld(map_ref: DirectionalLoudnessMap, map_sut: DirectionalLoudnessMap) -> DldReport:
    """Mean absolute map difference over all frames and directions."""
    diff = map_difference(map_ref, map_sut).values
    params = dict(map_ref.parameters())
    params["directions"] = [float(d) for d in map_ref.directions]
    return DldReport(float(diff.mean()), diff.mean(axis=0), diff.mean(axis=1), params)


def pearson(xs, ys) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateInput(f"need two 1-D sequences of equal length, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise DegenerateInput("need at least two points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("zero variance")
    r = np.dot(dx, dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))
