"""Stereo WAV input/output and REF/SUT alignment."""
from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (CorruptFile, NotStereo, RateMismatch, UnsupportedEncoding,
                     UnsupportedRate)

DEFAULT_RATE = 48000
ALIGN_TOLERANCE = 512

_PCM = 0x0001
_IEEE_FLOAT = 0x0003
_EXTENSIBLE = 0xFFFE

ENCODINGS = {
    "pcm16": (_PCM, 16),
    "pcm24": (_PCM, 24),
    "pcm32": (_PCM, 32),
    "float32": (_IEEE_FLOAT, 32),
}


class LengthMismatchWarning(UserWarning):
    """REF and SUT lengths differ; the longer one was truncated."""


@dataclass(frozen=True, eq=False)
class StereoBuffer:
    """Two equal-length channels of float64 samples (full scale = 1.0)."""

    left: np.ndarray
    right: np.ndarray
    sample_rate: int

    def __post_init__(self):
        left = np.array(self.left, dtype=np.float64).ravel()
        right = np.array(self.right, dtype=np.float64).ravel()
        if left.shape != right.shape:
            raise ValueError(f"channel lengths differ: {left.size} vs {right.size}")
        if not (np.all(np.isfinite(left)) and np.all(np.isfinite(right))):
            raise ValueError("samples must be finite")
        if int(self.sample_rate) != self.sample_rate or self.sample_rate <= 0:
            raise ValueError(f"invalid sample rate {self.sample_rate!r}")
        left.flags.writeable = False
        right.flags.writeable = False
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self):
        return self.left.size

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate

    def swapped(self) -> StereoBuffer:
        return StereoBuffer(self.right, self.left, self.sample_rate)

    def scaled(self, c: float) -> StereoBuffer:
        return StereoBuffer(c * self.left, c * self.right, self.sample_rate)

    def truncated(self, n: int) -> StereoBuffer:
        if n >= len(self):
            return self
        return StereoBuffer(self.left[:n], self.right[:n], self.sample_rate)

    def __eq__(self, other):
        if not isinstance(other, StereoBuffer):
            return NotImplemented
        return (self.sample_rate == other.sample_rate
                and np.array_equal(self.left, other.left)
                and np.array_equal(self.right, other.right))

    __hash__ = None


def _read_chunks(raw: bytes):
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise CorruptFile("not a RIFF/WAVE container")
    pos = 12
    chunks = {}
    while pos + 8 <= len(raw):
        cid, size = struct.unpack("<4sI", raw[pos:pos + 8])
        body = raw[pos + 8:pos + 8 + size]
        if len(body) < size:
            raise CorruptFile(f"chunk {cid!r} truncated ({len(body)} of {size} bytes)")
        chunks.setdefault(cid, body)
        pos += 8 + size + (size & 1)
    return chunks


def _parse_fmt(fmt: bytes):
    if len(fmt) < 16:
        raise CorruptFile("fmt chunk too short")
    tag, channels, rate, _, block_align, bits = struct.unpack("<HHIIHH", fmt[:16])
    if tag == _EXTENSIBLE:
        if len(fmt) < 26:
            raise CorruptFile("extensible fmt chunk too short")
        tag = struct.unpack("<H", fmt[24:26])[0]
    return tag, channels, rate, block_align, bits


def _decode(data: bytes, tag: int, bits: int) -> np.ndarray:
    if tag == _IEEE_FLOAT:
        return np.frombuffer(data, dtype="<f4").astype(np.float64)
    if bits == 16:
        ints = np.frombuffer(data, dtype="<i2").astype(np.int64)
    elif bits == 32:
        ints = np.frombuffer(data, dtype="<i4").astype(np.int64)
    else:
        b = np.frombuffer(data, dtype=np.uint8).reshape(-1, 3).astype(np.int64)
        ints = b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)
        ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
    return ints / float(1 << (bits - 1))


def load_stereo_wav(path, allow_any_rate: bool = False) -> StereoBuffer:
    """Read a two-channel WAV file into a :class:`StereoBuffer`.

    Integer PCM (16/24/32 bit) is divided by ``2**(bits-1)``; 32-bit float is
    taken as is. Only 48 kHz is accepted unless ``allow_any_rate`` is set.
    """
    raw = Path(path).read_bytes()
    chunks = _read_chunks(raw)
    if b"fmt " not in chunks:
        raise CorruptFile("missing fmt chunk")
    if b"data" not in chunks:
        raise CorruptFile("missing data chunk")
    tag, channels, rate, block_align, bits = _parse_fmt(chunks[b"fmt "])

    if channels != 2:
        raise NotStereo(f"{path}: expected 2 channels, found {channels}")
    if (tag, bits) not in ENCODINGS.values():
        raise UnsupportedEncoding(f"{path}: format tag {tag:#06x} with {bits} bits")
    if block_align != channels * bits // 8:
        raise CorruptFile(f"{path}: block align {block_align} inconsistent with {bits}-bit stereo")
    if rate <= 0:
        raise CorruptFile(f"{path}: sample rate {rate}")
    if rate != DEFAULT_RATE and not allow_any_rate:
        raise UnsupportedRate(f"{path}: {rate} Hz (only {DEFAULT_RATE} Hz accepted)")

    data = chunks[b"data"]
    data = data[:len(data) - len(data) % block_align]
    samples = _decode(data, tag, bits).reshape(-1, 2)
    if not np.all(np.isfinite(samples)):
        raise CorruptFile(f"{path}: non-finite float samples")
    return StereoBuffer(samples[:, 0], samples[:, 1], rate)


def write_stereo_wav(path, buf: StereoBuffer, encoding: str = "pcm16"):
    """Write ``buf`` as a canonical 44-byte-header WAV file.

    Integer encodings round and clip to the representable range.
    """
    try:
        tag, bits = ENCODINGS[encoding]
    except KeyError:
        raise UnsupportedEncoding(f"unknown encoding {encoding!r}") from None
    frames = np.stack([buf.left, buf.right], axis=1).ravel()
    if tag == _IEEE_FLOAT:
        payload = frames.astype("<f4").tobytes()
    else:
        full = 1 << (bits - 1)
        ints = np.clip(np.round(frames * full), -full, full - 1).astype(np.int64)
        if bits == 24:
            u = ints & 0xFFFFFF
            payload = np.stack([u & 0xFF, (u >> 8) & 0xFF, (u >> 16) & 0xFF],
                               axis=1).astype(np.uint8).tobytes()
        else:
            payload = ints.astype(f"<i{bits // 8}").tobytes()
    block_align = 2 * bits // 8
    fmt = struct.pack("<HHIIHH", tag, 2, buf.sample_rate,
                      buf.sample_rate * block_align, block_align, bits)
    body = (b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
            + b"data" + struct.pack("<I", len(payload)) + payload)
    if len(payload) & 1:
        body += b"\x00"
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)


def align_pair(ref: StereoBuffer, sut: StereoBuffer):
    """Truncate REF and SUT to their common length.

    Emits :class:`LengthMismatchWarning` whenever the lengths differ; the
    message flags differences beyond one hop (512 samples) as large.
    """
    if ref.sample_rate != sut.sample_rate:
        raise RateMismatch(f"sample rates differ: {ref.sample_rate} vs {sut.sample_rate}")
    n = min(len(ref), len(sut))
    gap = abs(len(ref) - len(sut))
    if gap:
        size = "large length mismatch" if gap > ALIGN_TOLERANCE else "length mismatch"
        warnings.warn(f"{size}: REF has {len(ref)} samples, SUT has {len(sut)}; "
                      f"truncating to {n}", LengthMismatchWarning, stacklevel=2)
    return ref.truncated(n), sut.truncated(n)
