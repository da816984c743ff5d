import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirloud.errors import InfeasiblePartition, InputTooShort, ShapeMismatch
from dirloud.peripheral import (StftConfig, apply_ear_weighting, ear_weight_db, erb_number,
                                erb_number_to_hz, erb_partition, peripheral_model, stft_analyze)
from dirloud.signal_io import StereoBuffer

FS = 48000


def direct_dft(frame):
    """O(M^2) one-sided DFT, independent of numpy.fft."""
    m = len(frame)
    k = np.arange(m // 2 + 1)[:, None]
    n = np.arange(m)[None, :]
    return np.exp(-2j * np.pi * k * n / m) @ frame


def hann(m):
    n = np.arange(m)
    return 0.5 - 0.5 * np.cos(2 * np.pi * n / (m - 1))


@pytest.mark.parametrize("n,expected", [(1024, 1), (1025, 1), (1535, 1), (1536, 2), (48000, 92)])
def test_frame_count(n, expected):
    x = np.zeros(n)
    left, right = stft_analyze(StereoBuffer(x, x, FS))
    assert left.shape == right.shape == (expected, 513)
    assert StftConfig().n_frames(n) == expected


def test_too_short():
    with pytest.raises(InputTooShort):
        stft_analyze(StereoBuffer(np.zeros(1023), np.zeros(1023), FS))


def test_zero_input():
    x = np.zeros(4096)
    left, right = stft_analyze(StereoBuffer(x, x, FS))
    assert not left.any() and not right.any()


def test_matches_direct_dft(rng):
    x = rng.standard_normal((2, 6000))
    left, right = stft_analyze(StereoBuffer(x[0], x[1], FS))
    for m in (0, 3, left.shape[0] - 1):
        block = x[:, m * 512:m * 512 + 1024] * hann(1024)
        for ch, spec in zip(block, (left, right)):
            ref = direct_dft(ch)
            assert np.max(np.abs(spec[m] - ref)) <= 1e-9 * np.max(np.abs(ref))


def test_sine_peak_bin():
    t = np.arange(FS) / FS
    x = np.sin(2 * np.pi * 937.5 * t)
    left, _ = stft_analyze(StereoBuffer(x, x, FS))
    assert np.all(np.argmax(np.abs(left), axis=1) == 20)
    oracle = direct_dft(x[:1024] * hann(1024))
    assert np.argmax(np.abs(oracle)) == 20


def test_parseval(rng):
    """One-sided spectrum energy (bins 1..M/2-1 doubled) equals block energy."""
    x = rng.standard_normal((2, 20 * 512 + 1024))
    left, _ = stft_analyze(StereoBuffer(x[0], x[1], FS))
    w = np.full(513, 2.0)
    w[0] = w[-1] = 1.0
    for m in rng.choice(left.shape[0], 8, replace=False):
        block = x[0, m * 512:m * 512 + 1024] * hann(1024)
        spec_energy = np.sum(w * np.abs(left[m]) ** 2) / 1024
        assert spec_energy == pytest.approx(np.sum(block ** 2), rel=1e-9)


def test_erb_number_spot():
    assert erb_number(1000.0) == pytest.approx(15.62, abs=5e-3)
    assert erb_number_to_hz(erb_number(1234.5)) == pytest.approx(1234.5)


def test_default_partition():
    part = erb_partition(FS, 20, 0.0, 1024)
    assert part.n_bands == 20
    assert part.bin_edges[0] == 0 and part.bin_edges[-1] == 513
    assert np.all(part.widths >= 1)
    assert part.widths.sum() == 513
    assert np.all(np.diff(part.edges_hz) > 0)
    assert part.edges_hz[7] == pytest.approx(941.2, abs=1.0)
    # bin counts from a brute-force assignment of each bin centre (k * 46.875 Hz)
    assert part.widths.tolist() == [2, 1, 2, 3, 3, 4, 6, 6, 8, 11, 13, 17, 21, 26, 34,
                                    42, 53, 68, 85, 108]


def test_partition_equal_erb_steps():
    part = erb_partition(FS, 20, 300.0, 1024)
    steps = np.diff(erb_number(part.edges_hz))
    np.testing.assert_allclose(steps, steps[0], rtol=1e-12)
    assert part.edges_hz[0] == 300.0 and part.widths.sum() == 513


def test_infeasible_partition():
    with pytest.raises(InfeasiblePartition):
        erb_partition(FS, 200, 0.0, 1024)
    with pytest.raises(InfeasiblePartition):
        erb_partition(FS, 20, 30000.0, 1024)


@settings(max_examples=40, deadline=None)
@given(n_bands=st.integers(1, 20), f_min=st.floats(0, 2000),
       block=st.sampled_from([512, 1024, 2048]), fs=st.sampled_from([32000, 44100, 48000]))
def test_partition_covers_all_bins(n_bands, f_min, block, fs):
    try:
        part = erb_partition(fs, n_bands, f_min, block)
    except InfeasiblePartition:
        return
    assert part.widths.sum() == block // 2 + 1
    assert np.all(part.widths >= 1)
    assert np.all(np.diff(part.bin_edges) > 0)
    band = part.band_of_bin()
    assert band.size == block // 2 + 1 and np.all(np.diff(band) >= 0)


def test_ear_weight_spot_values():
    assert ear_weight_db(1000.0) == pytest.approx(-1.91, abs=5e-3)
    assert ear_weight_db(3300.0) == pytest.approx(5.59, abs=5e-3)


def test_ear_gains_positive_finite():
    gains = erb_partition(FS).ear_gains()
    assert np.all(np.isfinite(gains)) and np.all(gains > 0)
    centers = erb_partition(FS).center_frequencies()
    assert centers[0] == 50.0
    assert centers[5] == pytest.approx(np.sqrt(505.2 * 697.9), rel=1e-3)


def test_weighting_is_per_band(rng):
    part = erb_partition(FS)
    ones = np.ones((3, 513), dtype=complex)
    banded = apply_ear_weighting((ones, 2 * ones), part)
    gains = part.ear_gains()
    for b in range(20):
        np.testing.assert_allclose(banded.left[:, part.band_slice(b)], gains[b])
        np.testing.assert_allclose(banded.right[:, part.band_slice(b)], 2 * gains[b])


def test_weighting_zero_and_shape():
    part = erb_partition(FS)
    z = np.zeros((4, 513), dtype=complex)
    out = apply_ear_weighting((z, z), part)
    assert not out.left.any() and not out.right.any()
    with pytest.raises(ShapeMismatch):
        apply_ear_weighting((np.zeros((4, 100)), np.zeros((4, 100))), part)


@pytest.mark.parametrize("c", [0.25, 3.0, -1.5])
def test_weighting_commutes_with_scaling(rng, c):
    x = rng.standard_normal((2, 8192))
    a = peripheral_model(StereoBuffer(x[0], x[1], FS))
    b = peripheral_model(StereoBuffer(c * x[0], c * x[1], FS))
    np.testing.assert_allclose(b.left, c * a.left, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(b.right, c * a.right, rtol=1e-12, atol=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        StftConfig(1024, 0)
    with pytest.raises(ValueError):
        StftConfig(1024, 2048)
    assert StftConfig().frame_duration(FS) == pytest.approx(0.02133, abs=1e-4)
