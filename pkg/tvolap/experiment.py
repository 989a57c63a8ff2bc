"""
Experiment module.

An experiment renders a test signal, streams it through one or more
processors behind a :class:`~tvolap.adapter.FrameAdapter`, optionally
exchanges the impulse response once at the hop boundary nearest the
requested switch time, and measures the transition against steady-state
runs with either filter alone.

Sample indices in the metrics refer to the input ("content") time axis:
every output is shifted back by the end-to-end delay of its processor, so
index n of every aligned output belongs to input sample n.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .adapter import FrameAdapter
from .buffer import AudioBuffer, ImpulseResponse
from .engine import TvolapEngine
from .errors import InvalidConfigurationError, InvalidSizeError
from .partitions import check_hop
from .processor import StreamingProcessor
from .reference import (
    CrossfadeConfig,
    CrossfadeConvolver,
    OverlapAdd,
    OverlapSave,
    TimeDomainConvolver,
    WeightedOverlapAdd,
)
from .signals import binaural_surrogate, gen_ones, gen_pink, gen_sine, room_surrogate
from .typeutils import FloatArray
from .wav import read_wav, write_wav

logger = logging.getLogger(__name__)

# Environment variable overriding the default output directory.
OUTPUT_DIR_VARIABLE = "TVOLAP_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "tvolap-out"

# Algorithm names accepted by experiments.
ALGORITHMS = ("tdc", "cf-tdc", "ola", "ols", "wola", "tvolap")

# Deviation from the steady state that still counts as settled.
TRANSITION_TOLERANCE = 1e-9

# Defaults of generated inputs and synthetic impulse responses.
DEFAULT_DURATION_MS = 100.0
DEFAULT_IR_LENGTH = 2048
DEFAULT_ROOM_LENGTH = 32768

# Column order of the metrics table.
METRIC_FIELDS = (
    "algorithm",
    "hop",
    "audio_latency",
    "switching_latency",
    "stream_delay",
    "requested_switch",
    "applied_boundary",
    "applied_boundary_ms",
    "transition_width",
    "max_step",
    "steady_max_step",
    "difference_max",
    "difference_rms_db",
)


def output_dir(path: str | Path | None = None) -> Path:
    """
    Resolve the output directory.

    Args:
        path: Explicit directory. Defaults to ``$TVOLAP_OUTPUT_DIR`` or
            ``./tvolap-out``.

    Returns:
        The directory.
    """

    return Path(path or os.environ.get(OUTPUT_DIR_VARIABLE) or DEFAULT_OUTPUT_DIR)


@dataclass(frozen=True)
class InputSource:
    """Test signal of an experiment."""

    class Kind(Enum):
        """Kinds of input signals."""

        ONES = "ones"
        SINE = "sine"
        PINK = "pink"
        WAV = "wav"

    kind: Kind = Kind.ONES
    # Sine frequency in Hz.
    frequency: float = 750.0
    # Pink noise seed.
    seed: int = 1
    # WAV file for Kind.WAV.
    path: Path | None = None

    @classmethod
    def parse(cls, text: str) -> InputSource:
        """
        Parse ``ones``, ``sine[:freq]``, ``pink[:seed]``, ``wav:path`` or a
        path ending in ``.wav``.

        Args:
            text: Source description.

        Raises:
            InvalidConfigurationError: Raised for unknown sources.

        Returns:
            The source.
        """

        if text.lower().endswith(".wav") and not text.startswith("wav:"):
            return cls(cls.Kind.WAV, path=Path(text))

        name, _, argument = text.partition(":")
        try:
            kind = cls.Kind(name)
            if kind is cls.Kind.SINE:
                return cls(kind, frequency=float(argument or 750.0))
            if kind is cls.Kind.PINK:
                return cls(kind, seed=int(argument or 1))
            if kind is cls.Kind.WAV:
                return cls(kind, path=Path(argument))
        except ValueError as error:
            raise InvalidConfigurationError(f"Unknown input source {text!r}.") from error

        return cls(kind)

    def render(self, frames: int | None, sample_rate: int) -> AudioBuffer:
        """
        Render the signal.

        Args:
            frames: Number of samples; a WAV file defaults to its own length
                and is zero-padded or truncated otherwise.
            sample_rate: Sample rate of generated signals.

        Returns:
            The signal.
        """

        if self.kind is InputSource.Kind.WAV:
            assert self.path is not None, "A WAV source needs a path."
            buffer = read_wav(self.path)
            if frames is None:
                return buffer
            return AudioBuffer(buffer.padded(frames).samples[:, :frames], buffer.sample_rate)

        frames = frames or int(round(DEFAULT_DURATION_MS * sample_rate / 1000))
        if self.kind is InputSource.Kind.SINE:
            return gen_sine(self.frequency, frames, sample_rate)
        if self.kind is InputSource.Kind.PINK:
            return gen_pink(self.seed, frames, sample_rate)
        return gen_ones(frames, sample_rate)

    def __str__(self) -> str:
        if self.kind is InputSource.Kind.SINE:
            return f"sine:{self.frequency:g}"
        if self.kind is InputSource.Kind.PINK:
            return f"pink:{self.seed}"
        if self.kind is InputSource.Kind.WAV:
            return f"wav:{self.path}"
        return "ones"


def load_filter(text: str, length: int | None, sample_rate: int) -> ImpulseResponse:
    """
    Create or read an impulse response.

    Accepted descriptions are ``+delta``, ``-delta``, ``binaural:<azimuth>``,
    ``room:<seed>`` and WAV file paths.

    Args:
        text: Filter description.
        length: Impulse response length; WAV files shorter than this are
            zero-padded.
        sample_rate: Sample rate of synthetic filters and of the input.

    Raises:
        InvalidConfigurationError: Raised on an unknown description, a WAV
            file longer than ``length`` or a sample-rate mismatch.

    Returns:
        The impulse response.
    """

    name, _, argument = text.partition(":")

    try:
        if text in ("+delta", "delta", "-delta"):
            gain = -1.0 if text.startswith("-") else 1.0
            return ImpulseResponse.delta(length or DEFAULT_IR_LENGTH, sample_rate, gain)

        if name == "binaural":
            return binaural_surrogate(float(argument), length or DEFAULT_IR_LENGTH, sample_rate)

        if name == "room":
            return room_surrogate(
                length or DEFAULT_ROOM_LENGTH, sample_rate, seed=int(argument or 0)
            )
    except ValueError as error:
        raise InvalidConfigurationError(f"Invalid filter {text!r}: {error}") from error

    buffer = read_wav(text)
    if buffer.sample_rate != sample_rate:
        raise InvalidConfigurationError(
            f"Sample-rate mismatch: {text} runs at {buffer.sample_rate} Hz, "
            f"the input at {sample_rate} Hz."
        )

    if length is not None and buffer.frames > length:
        raise InvalidConfigurationError(
            f"{text} has {buffer.frames} samples, more than the configured {length}."
        )

    return ImpulseResponse(buffer.padded(length or buffer.frames).samples, sample_rate)


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment."""

    # Algorithm names, optionally with a crossfade shape ("cf-tdc:linear").
    algorithms: tuple[str, ...] = ("tvolap",)
    source: InputSource = field(default_factory=InputSource)
    # Filter before (and without) the switch.
    filter_a: str = "+delta"
    # Filter after the switch; None runs time-invariant.
    filter_b: str | None = None
    # Requested switch time in milliseconds; defaults to the middle of the signal.
    switch_time: float | None = None
    # Block size 2L of TVOLAP; the time-domain convolvers run at hop L.
    block: int = 512
    # Impulse response length; defaults to the filter's own length.
    ir_length: int | None = None
    sample_rate: int = 48000
    # Signal duration in milliseconds.
    duration: float | None = None
    # Crossfade of CF-TDC; defaults to a Hann fade of L samples.
    fade: CrossfadeConfig | None = None
    # Host chunk size fed to the frame adapters; defaults to each hop.
    chunk: int | None = None
    # File name prefix.
    name: str = "experiment"
    output_dir: Path | None = None
    # Parallel algorithm runs.
    jobs: int = 1
    # Write outputs shifted back by their delay instead of the raw stream.
    aligned: bool = True
    write_outputs: bool = True

    def __post_init__(self) -> None:
        if not self.algorithms:
            raise InvalidConfigurationError("At least one algorithm is required.")

        for token in self.algorithms:
            algorithm, _, shape = token.partition(":")
            if algorithm not in ALGORITHMS:
                raise InvalidConfigurationError(
                    f"Unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}."
                )
            if shape and (algorithm != "cf-tdc" or shape not in ("hann", "linear")):
                raise InvalidConfigurationError(f"Invalid algorithm variant {token!r}.")

        if len(set(self.algorithms)) != len(self.algorithms):
            raise InvalidConfigurationError("Algorithms must be unique.")

        try:
            check_hop(self.block // 2)
        except InvalidSizeError as error:
            raise InvalidConfigurationError(
                f"Block size {self.block} is not supported: {error}"
            ) from error

        if self.filter_b is None and self.switch_time is not None:
            raise InvalidConfigurationError("A switch time needs a second filter.")

        if self.switch_time is not None and self.switch_time < 0:
            raise InvalidConfigurationError(f"Switch time must be >= 0, got {self.switch_time}.")

        if self.duration is not None and self.duration <= 0:
            raise InvalidConfigurationError(f"Duration must be positive, got {self.duration}.")

        if self.jobs < 1 or (self.chunk is not None and self.chunk < 1):
            raise InvalidConfigurationError("Jobs and chunk size must be at least 1.")

    @property
    def hop(self) -> int:
        """Hop size L."""

        return self.block // 2

    @property
    def switching(self) -> bool:
        """Whether the experiment exchanges the filter."""

        return self.filter_b is not None


@dataclass
class AlgorithmResult:
    """Output and metrics of one algorithm."""

    algorithm: str
    hop: int
    # Output on the input time axis, same length as the input.
    output: AudioBuffer
    # Raw stream output including the end-to-end delay.
    stream: AudioBuffer
    audio_latency: int
    switching_latency: int
    # End-to-end delay through the frame adapter.
    stream_delay: int
    requested_switch: int | None = None
    switch_hop: int | None = None
    applied_boundary: int | None = None
    transition_width: int | None = None
    max_step: float | None = None
    steady_max_step: float | None = None
    # Steady-state outputs with the old and the new filter.
    reference_old: AudioBuffer | None = None
    reference_new: AudioBuffer | None = None


@dataclass
class Comparison:
    """Difference between TVOLAP and a CF-TDC reference."""

    reference: str
    candidate: str
    difference: AudioBuffer
    # Evaluated sample range [start, stop).
    window: tuple[int, int]
    max_abs: float
    rms: float
    rms_db: float


@dataclass
class ExperimentResult:
    """Everything an experiment produced."""

    spec: ExperimentSpec
    sample_rate: int
    frames: int
    results: list[AlgorithmResult]
    comparisons: list[Comparison] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)

    def result(self, algorithm: str) -> AlgorithmResult:
        """
        Find the result of an algorithm.

        Args:
            algorithm: Algorithm name as given in the spec.

        Raises:
            KeyError: Raised if the algorithm did not run.

        Returns:
            The result.
        """

        for result in self.results:
            if result.algorithm == algorithm:
                return result

        raise KeyError(algorithm)

    def metrics(self) -> list[dict[str, object]]:
        """
        One row per algorithm in :data:`METRIC_FIELDS` order.

        Returns:
            The metrics table.
        """

        differences = {comparison.reference: comparison for comparison in self.comparisons}
        rows = []

        for result in self.results:
            comparison = differences.get(result.algorithm)
            boundary = result.applied_boundary
            rows.append(
                {
                    "algorithm": result.algorithm,
                    "hop": result.hop,
                    "audio_latency": result.audio_latency,
                    "switching_latency": result.switching_latency,
                    "stream_delay": result.stream_delay,
                    "requested_switch": result.requested_switch,
                    "applied_boundary": boundary,
                    "applied_boundary_ms": (
                        None if boundary is None else 1000.0 * boundary / self.sample_rate
                    ),
                    "transition_width": result.transition_width,
                    "max_step": result.max_step,
                    "steady_max_step": result.steady_max_step,
                    "difference_max": comparison.max_abs if comparison else None,
                    "difference_rms_db": (
                        _finite_or_none(comparison.rms_db) if comparison else None
                    ),
                }
            )

        return rows


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def make_processor(
    token: str, ir: ImpulseResponse, spec: ExperimentSpec, channels: int
) -> StreamingProcessor:
    """
    Create the processor of an algorithm.

    Args:
        token: Algorithm name, optionally with a crossfade shape.
        ir: Initial impulse response.
        spec: Experiment parameters.
        channels: Number of processing lanes.

    Returns:
        The processor.
    """

    algorithm, _, shape = token.partition(":")

    if algorithm == "tvolap":
        return TvolapEngine.from_ir(ir, spec.hop, channels)

    if algorithm == "tdc":
        return TimeDomainConvolver(ir, spec.hop, channels)

    if algorithm == "cf-tdc":
        fade = spec.fade or CrossfadeConfig(spec.hop)
        if shape:
            fade = CrossfadeConfig(fade.duration, CrossfadeConfig.Shape(shape))
        return CrossfadeConvolver(ir, spec.hop, fade, channels)

    kinds = {"ola": OverlapAdd, "ols": OverlapSave, "wola": WeightedOverlapAdd}
    return kinds[algorithm](ir, channels)


def switch_hop(switch_sample: int, processor: StreamingProcessor) -> int:
    """
    Index of the hop before which a processor exchanges its filter so that the
    transition starts as close as possible to an input sample.

    Args:
        switch_sample: Requested switch position on the input time axis.
        processor: The processor.

    Returns:
        The hop index k; the transition starts at input sample
        ``k * hop - delay``.
    """

    return int(math.floor((switch_sample + processor.delay) / processor.hop + 0.5))


def stream(
    processor: StreamingProcessor,
    signal: FloatArray,
    chunk: int | None = None,
    new_filter: ImpulseResponse | None = None,
    at_hop: int | None = None,
) -> tuple[FloatArray, int]:
    """
    Feed a signal through a frame adapter and a processor.

    Args:
        processor: The processor.
        signal: Input of shape (channels, frames).
        chunk: Host chunk size. Defaults to the processor hop.
        new_filter: Filter to exchange.
        at_hop: Hop index before which ``new_filter`` is set.

    Returns:
        The raw output of length ``frames + delay`` and the delay.
    """

    def step(frame: FloatArray) -> FloatArray:
        if new_filter is not None and processor.block_counter == at_hop:
            processor.set_filter(new_filter)
        return processor.process(frame)

    adapter = FrameAdapter(processor.hop, processor.channels, step)
    delay = adapter.delay(processor.delay)
    total = signal.shape[1] + delay
    chunk = chunk or processor.hop

    padded = np.pad(signal, ((0, 0), (0, total - signal.shape[1])))
    output = np.concatenate(
        [adapter.process(padded[:, start : start + chunk]) for start in range(0, total, chunk)],
        axis=1,
    )

    return output, delay


def transition_width(
    output: FloatArray,
    reference: FloatArray,
    boundary: int,
    tolerance: float = TRANSITION_TOLERANCE,
) -> int:
    """
    Number of samples from the boundary up to and including the last sample
    that deviates from the steady state.

    Args:
        output: Output on the input time axis.
        reference: Steady-state output with the new filter.
        boundary: Applied boundary.
        tolerance: Largest deviation counted as settled.

    Returns:
        The width, 0 if the output matches from the boundary on.
    """

    deviation = np.max(np.abs(output[:, boundary:] - reference[:, boundary:]), axis=0)
    indices = np.flatnonzero(deviation > tolerance)
    return 0 if indices.size == 0 else int(indices[-1]) + 1


def max_step(samples: FloatArray, start: int = 1, stop: int | None = None) -> float:
    """
    Largest absolute difference between neighbouring samples in [start, stop).

    Args:
        samples: Signal of shape (channels, frames).
        start: First sample whose step to its predecessor counts. Defaults to 1.
        stop: End of the range. Defaults to the signal end.

    Returns:
        The largest step, 0 for an empty range.
    """

    start = max(start, 1)
    stop = samples.shape[1] if stop is None else min(stop, samples.shape[1])
    if stop <= start:
        return 0.0

    return float(np.max(np.abs(samples[:, start:stop] - samples[:, start - 1 : stop - 1])))


class _Setup:
    """Input and filters shared by the runs of one experiment."""

    def __init__(self, spec: ExperimentSpec) -> None:
        frames = None
        if spec.duration is not None:
            frames = int(round(spec.duration * spec.sample_rate / 1000))

        source = spec.source.render(frames, spec.sample_rate)
        self.sample_rate = source.sample_rate

        self.filter_a = load_filter(spec.filter_a, spec.ir_length, self.sample_rate)
        self.filter_b = None
        if spec.filter_b is not None:
            self.filter_b = load_filter(spec.filter_b, self.filter_a.length, self.sample_rate)

        self.channels = max(source.channels, self.filter_a.channels)
        if self.filter_b is not None:
            self.channels = max(self.channels, self.filter_b.channels)
        self.input = source.fan_out(self.channels)

        self.switch_sample = None
        if spec.switch_time is not None:
            self.switch_sample = int(round(spec.switch_time * self.sample_rate / 1000))
            if self.switch_sample >= self.input.frames:
                raise InvalidConfigurationError(
                    f"Switch at {spec.switch_time} ms lies outside the "
                    f"{1000 * self.input.duration:g} ms signal."
                )
        elif self.filter_b is not None:
            self.switch_sample = self.input.frames // 2


def _run_algorithm(token: str, spec: ExperimentSpec, setup: _Setup) -> AlgorithmResult:
    processor = make_processor(token, setup.filter_a, spec, setup.channels)
    processor.log(f"Running {token} at hop {processor.hop}.")
    frames = setup.input.frames

    at_hop = None
    boundary = 0
    if setup.switch_sample is not None:
        at_hop = switch_hop(setup.switch_sample, processor)
        boundary = max(at_hop * processor.hop - processor.delay, 0)
        if boundary >= frames:
            raise InvalidConfigurationError(
                f"{token} can only switch at sample {boundary}, past the end of the "
                f"{frames}-sample signal; request an earlier switch time."
            )

    raw, delay = stream(processor, setup.input.samples, spec.chunk, setup.filter_b, at_hop)
    output = raw[:, delay : delay + frames]

    result = AlgorithmResult(
        algorithm=token,
        hop=processor.hop,
        output=AudioBuffer(output, setup.sample_rate),
        stream=AudioBuffer(raw, setup.sample_rate),
        audio_latency=processor.latency,
        switching_latency=processor.switching_latency,
        stream_delay=delay,
    )

    if setup.filter_b is None or at_hop is None:
        return result

    # Steady-state runs with either filter alone.
    references = []
    for ir in (setup.filter_a, setup.filter_b):
        steady = make_processor(token, ir, spec, setup.channels)
        reference, _ = stream(steady, setup.input.samples, spec.chunk)
        references.append(reference[:, delay : delay + frames])
    old, new = references

    # Steps inside the crossfade, including the one onto its first sample.
    crossfade_end = boundary + processor.switching_latency + 1

    result.requested_switch = setup.switch_sample
    result.switch_hop = at_hop
    result.applied_boundary = boundary
    result.transition_width = transition_width(output, new, boundary)
    result.max_step = max_step(output, boundary, crossfade_end)
    result.steady_max_step = max(max_step(old), max_step(new))
    result.reference_old = AudioBuffer(old, setup.sample_rate)
    result.reference_new = AudioBuffer(new, setup.sample_rate)

    processor.log(
        f"Switch requested at sample {setup.switch_sample}, applied at {boundary}; "
        f"transition width {result.transition_width}."
    )

    return result


def compare(
    candidate: AlgorithmResult, reference: AlgorithmResult, ir_length: int
) -> Comparison:
    """
    Measure the difference between two aligned outputs around the switch.

    The window starts at the candidate's applied boundary and spans its
    switching latency plus the impulse response length.

    Args:
        candidate: Usually the TVOLAP result.
        reference: Usually a CF-TDC result.
        ir_length: Impulse response length.

    Returns:
        The comparison; ``rms_db`` is relative to the candidate RMS in the window.
    """

    difference = candidate.output.samples - reference.output.samples
    frames = difference.shape[1]
    start = candidate.applied_boundary or 0
    stop = min(frames, start + candidate.switching_latency + ir_length)

    window = difference[:, start:stop]
    rms = float(np.sqrt(np.mean(window**2))) if window.size else 0.0
    level = 0.0
    if window.size:
        level = float(np.sqrt(np.mean(candidate.output.samples[:, start:stop] ** 2)))

    with np.errstate(divide="ignore"):
        rms_db = float(20.0 * np.log10(rms / level)) if level > 0 else -math.inf

    return Comparison(
        reference=reference.algorithm,
        candidate=candidate.algorithm,
        difference=AudioBuffer(difference, candidate.output.sample_rate),
        window=(start, stop),
        max_abs=float(np.max(np.abs(window), initial=0.0)),
        rms=rms,
        rms_db=rms_db,
    )


def _write_transition(path: Path, result: AlgorithmResult, sample_rate: int) -> Path:
    assert result.reference_old is not None and result.reference_new is not None
    assert result.applied_boundary is not None

    frames = result.output.frames
    start = max(0, result.applied_boundary - result.hop)
    stop = min(frames, result.applied_boundary + result.switching_latency + result.hop)
    channels = range(result.output.channels)

    with path.open("w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(
            ["index", "time_ms"]
            + [f"{kind}_{c}" for c in channels for kind in ("output", "old", "new")]
        )
        for n in range(start, stop):
            row: list[object] = [n, repr(1000.0 * n / sample_rate)]
            for c in channels:
                row += [
                    repr(float(result.output.samples[c, n])),
                    repr(float(result.reference_old.samples[c, n])),
                    repr(float(result.reference_new.samples[c, n])),
                ]
            writer.writerow(row)

    return path


def _write_outputs(result: ExperimentResult) -> None:
    spec = result.spec
    directory = output_dir(spec.output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    prefix = spec.name

    for algorithm_result in result.results:
        stem = f"{prefix}-{algorithm_result.algorithm.replace(':', '-')}"
        audio = algorithm_result.output if spec.aligned else algorithm_result.stream
        result.files.append(write_wav(directory / f"{stem}.wav", audio))

        if algorithm_result.applied_boundary is not None:
            result.files.append(
                _write_transition(
                    directory / f"{stem}-transition.csv", algorithm_result, result.sample_rate
                )
            )

    for comparison in result.comparisons:
        name = f"{prefix}-difference-{comparison.reference.replace(':', '-')}.wav"
        result.files.append(write_wav(directory / name, comparison.difference))

    rows = result.metrics()

    csv_path = directory / f"{prefix}-metrics.csv"
    with csv_path.open("w", newline="") as file:
        writer = csv.DictWriter(file, fieldnames=METRIC_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: "" if value is None else value for key, value in row.items()})
    result.files.append(csv_path)

    json_path = directory / f"{prefix}-metrics.json"
    document = {
        "input": str(spec.source),
        "filter_a": spec.filter_a,
        "filter_b": spec.filter_b,
        "sample_rate": result.sample_rate,
        "frames": result.frames,
        "metrics": rows,
    }
    json_path.write_text(json.dumps(document, indent=2) + "\n")
    result.files.append(json_path)

    logger.info("Wrote %d files to %s.", len(result.files), directory)


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """
    Run an experiment.

    Args:
        spec: The experiment.

    Raises:
        InvalidConfigurationError: Raised on a sample-rate mismatch, a switch
            time outside the signal or unsupported parameters.
        IncompatibleFilterError: Raised if the second filter does not fit
            a processor.

    Returns:
        Outputs, metrics and written files.
    """

    setup = _Setup(spec)
    logger.info(
        "Experiment %s: %s over %d samples at %d Hz.",
        spec.name,
        ", ".join(spec.algorithms),
        setup.input.frames,
        setup.sample_rate,
    )

    with ThreadPoolExecutor(max_workers=spec.jobs) as executor:
        results = list(
            executor.map(lambda token: _run_algorithm(token, spec, setup), spec.algorithms)
        )

    result = ExperimentResult(spec, setup.sample_rate, setup.input.frames, results)

    # TVOLAP against every crossfaded reference.
    if spec.switching and "tvolap" in spec.algorithms:
        candidate = result.result("tvolap")
        for reference in results:
            if reference.algorithm.startswith("cf-tdc"):
                result.comparisons.append(
                    compare(candidate, reference, setup.filter_a.length)
                )

    if spec.write_outputs:
        _write_outputs(result)

    return result
