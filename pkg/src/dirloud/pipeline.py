"""End-to-end analysis: stereo buffer -> loudness map -> DLD report."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .distortion import DldReport, dld
from .loudness import DEFAULT_BANDS, DirectionalLoudnessMap, loudness_map
from .panning import DirectionBank, panning_index
from .peripheral import StftConfig, peripheral_model
from .signal_io import StereoBuffer, align_pair

N_BANDS = 20


@dataclass(frozen=True)
class AnalysisConfig:
    directions: int = 22
    xi: float = 0.006
    bands: tuple = DEFAULT_BANDS
    f_min: float = 0.0
    block: int = 1024
    hop: int = 512
    allow_any_rate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(int(b) for b in self.bands))

    @property
    def stft(self) -> StftConfig:
        return StftConfig(self.block, self.hop)

    @property
    def bank(self) -> DirectionBank:
        return DirectionBank(self.directions, self.xi)

    def replace(self, **changes) -> AnalysisConfig:
        return AnalysisConfig(**{**asdict(self), **changes})


def analyze(buf: StereoBuffer, config: AnalysisConfig = AnalysisConfig()) -> DirectionalLoudnessMap:
    """Directional loudness map of one stereo signal."""
    spec = peripheral_model(buf, config.stft, N_BANDS, config.f_min)
    return loudness_map(spec, panning_index(spec), config.bank, config.bands)


def compare(ref: StereoBuffer, sut: StereoBuffer,
            config: AnalysisConfig = AnalysisConfig()) -> DldReport:
    """DLD between a reference and a signal under test (truncated to common length)."""
    ref, sut = align_pair(ref, sut)
    return dld(analyze(ref, config), analyze(sut, config))
