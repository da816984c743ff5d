import numpy as np
import pytest

from dirloud import synth
from dirloud.signal_io import StereoBuffer, write_stereo_wav

FS = 48000


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def left_noise():
    return synth.panned_noise(synth.PanLaw(1.0, 0.0), duration=1.0, seed=7)


@pytest.fixture
def stereo_noise():
    """Independent noise in both channels, so bins take many panning indices."""
    g = np.random.default_rng(99)
    return StereoBuffer(0.2 * g.standard_normal(FS // 2), 0.1 * g.standard_normal(FS // 2), FS)


@pytest.fixture
def wav_file(tmp_path):
    def make(buf, name="x.wav", encoding="pcm16"):
        path = tmp_path / name
        write_stereo_wav(path, buf, encoding)
        return path
    return make


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the outcome is printed in the summary."""
    def record(name):
        ACCEPTANCE_RESULTS[request.node.nodeid] = [name, None]
    return record


def pytest_runtest_logreport(report):
    entry = ACCEPTANCE_RESULTS.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        entry[1] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in ACCEPTANCE_RESULTS.values():
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        terminalreporter.write_line(f"{status}  {name}")
