from . import scenarios
from .adapter import FrameAdapter
from .buffer import AudioBuffer, ImpulseResponse
from .cost import Algorithm, CostReport, cost, efficiency_ratio, published_tables
from .engine import OperationCounts, TvolapEngine
from .errors import (
    IncompatibleFilterError,
    InvalidConfigurationError,
    InvalidFrequencyError,
    InvalidInputError,
    InvalidSizeError,
    InvalidSpectrumError,
    MalformedHeaderError,
    SwitchInProgressError,
    TruncatedDataError,
    TvolapError,
    UnsupportedCodecError,
    WavError,
)
from .experiment import ExperimentResult, ExperimentSpec, InputSource, run_experiment
from .kernel import SpectrumFrame, forward_real, inverse_real, mac
from .partitions import FilterPartitionSet, hann_window, partition, reassemble
from .processor import StreamingProcessor
from .reference import (
    CrossfadeConfig,
    CrossfadeConvolver,
    OverlapAdd,
    OverlapSave,
    TimeDomainConvolver,
    WeightedOverlapAdd,
    direct_convolve,
)
from .signals import binaural_surrogate, gen_ones, gen_pink, gen_sine, room_surrogate
from .wav import WavFormat, read_wav, write_wav

__all__ = [
    "scenarios",
    "FrameAdapter",
    "AudioBuffer",
    "ImpulseResponse",
    "Algorithm",
    "CostReport",
    "cost",
    "efficiency_ratio",
    "published_tables",
    "OperationCounts",
    "TvolapEngine",
    "IncompatibleFilterError",
    "InvalidConfigurationError",
    "InvalidFrequencyError",
    "InvalidInputError",
    "InvalidSizeError",
    "InvalidSpectrumError",
    "MalformedHeaderError",
    "SwitchInProgressError",
    "TruncatedDataError",
    "TvolapError",
    "UnsupportedCodecError",
    "WavError",
    "ExperimentResult",
    "ExperimentSpec",
    "InputSource",
    "run_experiment",
    "SpectrumFrame",
    "forward_real",
    "inverse_real",
    "mac",
    "FilterPartitionSet",
    "hann_window",
    "partition",
    "reassemble",
    "StreamingProcessor",
    "CrossfadeConfig",
    "CrossfadeConvolver",
    "OverlapAdd",
    "OverlapSave",
    "TimeDomainConvolver",
    "WeightedOverlapAdd",
    "direct_convolve",
    "binaural_surrogate",
    "gen_ones",
    "gen_pink",
    "gen_sine",
    "room_surrogate",
    "WavFormat",
    "read_wav",
    "write_wav",
]
