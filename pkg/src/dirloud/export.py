"""CSV and PGM serialization of loudness maps."""
from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np


def fmt(v) -> str:
    return format(float(v), ".12g")


def map_to_csv(values, directions) -> str:
    """Header row of direction values, then one row of J values per frame."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(fmt(d) for d in directions)
    for row in np.asarray(values):
        writer.writerow(fmt(v) for v in row)
    return out.getvalue()


def write_map_csv(path, dmap):
    Path(path).write_text(map_to_csv(dmap.values, dmap.directions), encoding="utf-8")


def read_map_csv(path):
    """Inverse of :func:`write_map_csv`; returns ``(values, directions)``."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    directions = np.array([float(v) for v in rows[0]])
    values = np.array([[float(v) for v in row] for row in rows[1:]], dtype=np.float64)
    return values.reshape(-1, directions.size), directions


def map_to_pgm(values) -> bytes:
    """8-bit binary graymap: time runs left to right, +1 (right) at the top.

    Gray levels are scaled to the map's own maximum, so brighter means louder.
    """
    values = np.asarray(values, dtype=np.float64)
    peak = values.max() if values.size else 0.0
    scaled = values / peak if peak > 0 else np.zeros_like(values)
    image = np.round(255.0 * scaled.T[::-1]).astype(np.uint8)
    height, width = image.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + image.tobytes()


def write_pgm(path, dmap):
    Path(path).write_bytes(map_to_pgm(dmap.values))


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    magic, dims, maxval, body = raw.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit binary PGM")
    width, height = map(int, dims.split())
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width)
