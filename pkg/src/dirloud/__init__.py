"""Directional loudness maps of stereo signals and the directional loudness
distortion (DLD) between a reference and a processed version."""

from .distortion import DldReport, dld, map_difference, pearson
from .errors import DirloudError
from .loudness import DEFAULT_BANDS, DirectionalLoudnessMap, loudness_map
from .panning import DirectionBank, gaussian_window, panning_index
from .peripheral import StftConfig, erb_partition, peripheral_model, stft_analyze
from .pipeline import AnalysisConfig, analyze, compare
from .signal_io import StereoBuffer, align_pair, load_stereo_wav, write_stereo_wav

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig", "DEFAULT_BANDS", "DirectionBank", "DirectionalLoudnessMap",
    "DirloudError", "DldReport", "StereoBuffer", "StftConfig", "align_pair", "analyze",
    "compare", "dld", "erb_partition", "gaussian_window", "load_stereo_wav",
    "loudness_map", "map_difference", "panning_index", "pearson", "peripheral_model",
    "stft_analyze", "write_stereo_wav",
]
