import struct
import warnings

import numpy as np
import pytest

from dirloud.errors import CorruptFile, NotStereo, RateMismatch, UnsupportedEncoding, UnsupportedRate
from dirloud.signal_io import (LengthMismatchWarning, StereoBuffer, align_pair,
                               load_stereo_wav, write_stereo_wav)


def raw_wav(path, tag, channels, rate, bits, payload, extra_chunks=b""):
    block = channels * bits // 8
    fmt = struct.pack("<HHIIHH", tag, channels, rate, rate * block, block, bits)
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt + extra_chunks
    body += b"data" + struct.pack("<I", len(payload)) + payload
    path.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    return path


def test_one_second_48k_pcm16(tmp_path):
    n = 48000
    ints = np.arange(2 * n, dtype=np.int64) % 65536 - 32768
    path = raw_wav(tmp_path / "a.wav", 1, 2, 48000, 16, ints.astype("<i2").tobytes())
    buf = load_stereo_wav(path)
    assert len(buf) == 48000 and buf.sample_rate == 48000
    np.testing.assert_array_equal(buf.left, ints[0::2] / 32768.0)
    np.testing.assert_array_equal(buf.right, ints[1::2] / 32768.0)


def test_mono_rejected(tmp_path):
    path = raw_wav(tmp_path / "m.wav", 1, 1, 48000, 16, b"\x00\x00" * 100)
    with pytest.raises(NotStereo):
        load_stereo_wav(path)


def test_44k1_rejected_unless_allowed(tmp_path):
    path = raw_wav(tmp_path / "r.wav", 1, 2, 44100, 16, b"\x00\x00" * 200)
    with pytest.raises(UnsupportedRate):
        load_stereo_wav(path)
    assert load_stereo_wav(path, allow_any_rate=True).sample_rate == 44100


@pytest.mark.parametrize("tag,bits", [(1, 8), (3, 64), (2, 16)])
def test_unsupported_encodings(tmp_path, tag, bits):
    path = raw_wav(tmp_path / "e.wav", tag, 2, 48000, bits, b"\x00" * 64)
    with pytest.raises(UnsupportedEncoding):
        load_stereo_wav(path)


def test_corrupt_files(tmp_path):
    (tmp_path / "junk.wav").write_bytes(b"not a wav at all")
    with pytest.raises(CorruptFile):
        load_stereo_wav(tmp_path / "junk.wav")
    good = raw_wav(tmp_path / "t.wav", 1, 2, 48000, 16, b"\x00" * 400)
    (tmp_path / "trunc.wav").write_bytes(good.read_bytes()[:-100])
    with pytest.raises(CorruptFile):
        load_stereo_wav(tmp_path / "trunc.wav")
    nodata = tmp_path / "nodata.wav"
    fmt = struct.pack("<HHIIHH", 1, 2, 48000, 192000, 4, 16)
    body = b"WAVE" + b"fmt " + struct.pack("<I", 16) + fmt
    nodata.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    with pytest.raises(CorruptFile):
        load_stereo_wav(nodata)


def test_unknown_chunks_ignored(tmp_path):
    payload = np.array([1000, -1000] * 10, dtype="<i2").tobytes()
    path = raw_wav(tmp_path / "l.wav", 1, 2, 48000, 16, payload,
                   extra_chunks=b"LIST" + struct.pack("<I", 3) + b"abc\x00")
    buf = load_stereo_wav(path)
    assert len(buf) == 10 and buf.left[0] == 1000 / 32768


def test_24bit_decoding(tmp_path):
    vals = np.array([-(1 << 23), (1 << 23) - 1, 1, -1, 0, 4660])
    u = vals & 0xFFFFFF
    payload = np.stack([u & 0xFF, (u >> 8) & 0xFF, u >> 16], axis=1).astype(np.uint8).tobytes()
    buf = load_stereo_wav(raw_wav(tmp_path / "p.wav", 1, 2, 48000, 24, payload))
    np.testing.assert_array_equal(np.stack([buf.left, buf.right], 1).ravel(), vals / 2.0 ** 23)
    assert buf.left[0] == -1.0


def test_extensible_float(tmp_path):
    data = np.array([0.5, -0.25, 1.5, -2.0], dtype="<f4")
    fmt = struct.pack("<HHIIHH", 0xFFFE, 2, 48000, 384000, 8, 32)
    fmt += struct.pack("<HHI", 22, 32, 3) + struct.pack("<H", 3) + b"\x00" * 14
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    body += b"data" + struct.pack("<I", data.nbytes) + data.tobytes()
    path = tmp_path / "f.wav"
    path.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    buf = load_stereo_wav(path)
    np.testing.assert_array_equal(buf.left, [0.5, 1.5])
    np.testing.assert_array_equal(buf.right, [-0.25, -2.0])


@pytest.mark.parametrize("encoding,tol", [("pcm16", 2 ** -15), ("pcm24", 2 ** -23),
                                          ("pcm32", 2 ** -31), ("float32", 1e-7)])
def test_write_read_roundtrip(tmp_path, rng, encoding, tol):
    x = rng.uniform(-0.99, 0.99, (2, 1001))
    buf = StereoBuffer(x[0], x[1], 48000)
    write_stereo_wav(tmp_path / "w.wav", buf, encoding)
    back = load_stereo_wav(tmp_path / "w.wav")
    assert len(back) == 1001
    np.testing.assert_allclose(back.left, buf.left, atol=tol)
    np.testing.assert_allclose(back.right, buf.right, atol=tol)


def test_integer_pcm_within_unit_range(tmp_path, rng):
    buf = StereoBuffer(rng.uniform(-3, 3, 500), rng.uniform(-3, 3, 500), 48000)
    for enc in ("pcm16", "pcm24", "pcm32"):
        write_stereo_wav(tmp_path / "c.wav", buf, enc)
        back = load_stereo_wav(tmp_path / "c.wav")
        assert back.left.min() >= -1.0 and back.left.max() <= 1.0
        assert back.right.min() >= -1.0 and back.right.max() <= 1.0


def test_buffer_invariants():
    with pytest.raises(ValueError):
        StereoBuffer([0.0, 1.0], [0.0], 48000)
    with pytest.raises(ValueError):
        StereoBuffer([0.0, np.nan], [0.0, 0.0], 48000)
    with pytest.raises(ValueError):
        StereoBuffer([0.0], [0.0], 0)


def test_align_equal_lengths_unchanged():
    a = StereoBuffer(np.ones(100), np.zeros(100), 48000)
    b = StereoBuffer(np.zeros(100), np.ones(100), 48000)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ra, rb = align_pair(a, b)
    assert ra == a and rb == b


def test_align_truncates_and_warns():
    a = StereoBuffer(np.ones(48000), np.ones(48000), 48000)
    b = StereoBuffer(np.ones(47500), np.ones(47500), 48000)
    with pytest.warns(LengthMismatchWarning):
        ra, rb = align_pair(a, b)
    assert len(ra) == len(rb) == 47500


def test_align_large_difference_flagged():
    a = StereoBuffer(np.ones(2000), np.ones(2000), 48000)
    b = StereoBuffer(np.ones(600), np.ones(600), 48000)
    with pytest.warns(LengthMismatchWarning, match="large"):
        ra, rb = align_pair(a, b)
    assert len(ra) == 600


def test_align_rate_mismatch():
    with pytest.raises(RateMismatch):
        align_pair(StereoBuffer([0.0], [0.0], 48000), StereoBuffer([0.0], [0.0], 44100))


def test_align_idempotent(rng):
    a = StereoBuffer(rng.standard_normal(3000), rng.standard_normal(3000), 48000)
    b = StereoBuffer(rng.standard_normal(2000), rng.standard_normal(2000), 48000)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        once = align_pair(a, b)
        twice = align_pair(*once)
    assert once[0] == twice[0] and once[1] == twice[1]
