"""
Reference engines module.

Comparison algorithms sharing the :class:`~tvolap.processor.StreamingProcessor`
interface:

.. table::

    +-----------+-------------+-------+---------+-------------------------------+
    | Class     | Hop         | Delay | Latency | Filter switch                 |
    +===========+=============+=======+=========+===============================+
    | TDC       | any         | 0     | 0       | hard                          |
    +-----------+-------------+-------+---------+-------------------------------+
    | CF-TDC    | any         | 0     | 0       | crossfade of two TDC streams  |
    +-----------+-------------+-------+---------+-------------------------------+
    | OLA       | N           | 0     | N       | hard, remainder keeps old IR  |
    +-----------+-------------+-------+---------+-------------------------------+
    | OLS       | N           | 0     | N       | hard                          |
    +-----------+-------------+-------+---------+-------------------------------+
    | WOLA      | N / 2       | N / 2 | N       | Hann crossfade of N / 2       |
    +-----------+-------------+-------+---------+-------------------------------+
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .buffer import AudioBuffer
from .errors import (
    IncompatibleFilterError,
    InvalidConfigurationError,
    InvalidInputError,
    InvalidSizeError,
    SwitchInProgressError,
)
from .kernel import MIN_TRANSFORM_LENGTH, irfft, rfft
from .partitions import hann_window
from .processor import StreamingProcessor
from .typeutils import is_power_of_two

if TYPE_CHECKING:
    from .buffer import ImpulseResponse
    from .typeutils import ComplexArray, FloatArray

logger = logging.getLogger(__name__)


def direct_convolve(x: AudioBuffer, h: ImpulseResponse) -> AudioBuffer:
    """
    Full linear convolution of every lane, evaluated in the time domain.

    A mono input is fanned out to the channels of a multichannel impulse
    response and vice versa.

    Args:
        x: Input signal.
        h: Impulse response.

    Raises:
        InvalidInputError: Raised if the input is empty or the channel counts
            cannot be matched.

    Returns:
        Output of length ``len(x) + len(h) - 1``.
    """

    if x.frames < 1:
        raise InvalidInputError("Cannot convolve an empty input.")

    channels = max(x.channels, h.channels)
    x, h = x.fan_out(channels), h.fan_out(channels)

    return AudioBuffer(
        np.stack([np.convolve(lane, taps) for lane, taps in zip(x.samples, h.samples)]),
        x.sample_rate,
    )


def _check_block(length: int) -> None:
    if not is_power_of_two(2 * length) or 2 * length < MIN_TRANSFORM_LENGTH:
        raise InvalidSizeError(
            f"Block size {length} needs a power-of-two transform of twice its length."
        )


class BlockConvolver(StreamingProcessor):
    """
    Streaming processor holding one impulse response of fixed length N.

    Replacement filters are staged by :meth:`set_filter` and swapped in at the
    start of the next :meth:`process` call.
    """

    def __init__(self, ir: ImpulseResponse, hop: int, channels: int | None = None) -> None:
        """
        Initialize the convolver.

        Args:
            ir: Initial impulse response, defines N.
            hop: Samples per call.
            channels: Fan a mono impulse response out to this many channels.
                Defaults to the channel count of ``ir``.
        """

        StreamingProcessor.__init__(self, hop, channels or ir.channels, ir.sample_rate)

        # Impulse response length N.
        self.length = ir.length

        # Active filter in the form used by the subclass, and the staged one.
        self.filter = self._prepare(ir.fan_out(self.channels).samples)
        self.pending_filter: np.ndarray | None = None
        self._lock = threading.Lock()

        self.reset()

    def _prepare(self, taps: FloatArray) -> np.ndarray:
        """
        Convert impulse response lanes into the form consumed by :meth:`process`.

        Args:
            taps: Impulse response of shape (channels, N).

        Returns:
            The prepared filter.
        """

        return taps

    def check_filter(self, ir: ImpulseResponse) -> None:
        """
        Ensure a replacement impulse response matches this convolver.

        Args:
            ir: Candidate impulse response.

        Raises:
            IncompatibleFilterError: Raised on a length, channel or sample rate
                mismatch.
        """

        if ir.length != self.length:
            raise IncompatibleFilterError(
                f"{self} is configured for N = {self.length}, got {ir.length} samples."
            )

        if ir.channels not in (1, self.channels):
            raise IncompatibleFilterError(
                f"{self} has {self.channels} channels, got {ir.channels}."
            )

        if ir.sample_rate != self.sample_rate:
            raise IncompatibleFilterError(
                f"{self} runs at {self.sample_rate} Hz, got {ir.sample_rate} Hz."
            )

    def set_filter(self, ir: ImpulseResponse) -> None:
        self.check_filter(ir)
        prepared = self._prepare(ir.fan_out(self.channels).samples)

        with self._lock:
            self.pending_filter = prepared

        self.log(f"Staged filter switch after hop {self.block_counter}.")

    def _take_pending(self) -> np.ndarray | None:
        with self._lock:
            pending, self.pending_filter = self.pending_filter, None

        return pending

    def _apply_pending(self) -> None:
        pending = self._take_pending()
        if pending is not None:
            self.filter = pending


class TimeDomainConvolver(BlockConvolver):
    """Direct convolution, computed sample by sample over each hop."""

    algorithm = "tdc"

    def __init__(self, ir: ImpulseResponse, hop: int = 1, channels: int | None = None) -> None:
        BlockConvolver.__init__(self, ir, hop, channels)

    @property
    def latency(self) -> int:
        # Every output sample only depends on past and present input.
        return 0

    def reset(self) -> None:
        StreamingProcessor.reset(self)

        # Last N - 1 input samples.
        self.history = np.zeros((self.channels, self.length - 1))

    def _convolve(self, taps: FloatArray, signal: FloatArray) -> FloatArray:
        return np.stack(
            [np.convolve(lane, lane_taps, mode="valid") for lane, lane_taps in zip(signal, taps)]
        )

    def _advance(self, frame: FloatArray) -> FloatArray:
        signal = np.concatenate((self.history, frame), axis=1)
        self.history = signal[:, self.hop :]
        return signal

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)
        self._apply_pending()

        output = self._convolve(self.filter, self._advance(frame))

        self.block_counter += 1
        return output


@dataclass(frozen=True)
class CrossfadeConfig:
    """
    Crossfade of a :class:`CrossfadeConvolver`.

    The new stream is weighted with ``g_new(t)`` for t = 0 .. duration - 1
    samples after the switch and the old stream with ``1 - g_new(t)``.
    """

    class Shape(Enum):
        """Gain curve of the incoming stream."""

        # (1 - cos(pi t / D)) / 2, the complementary Hann half.
        HANN = "hann"
        # t / D.
        LINEAR = "linear"

    # Fade length D in samples.
    duration: int = 256
    # Gain curve.
    shape: Shape = Shape.HANN

    def __post_init__(self) -> None:
        if self.duration < 1:
            raise InvalidConfigurationError(
                f"Crossfade duration must be at least 1 sample, got {self.duration}."
            )

    def gains(self, t: np.ndarray) -> tuple[FloatArray, FloatArray]:
        """
        Evaluate the complementary gains.

        Args:
            t: Samples since the switch.

        Returns:
            The old and new gains; both are clipped to the range [0, 1].
        """

        position = np.clip(np.asarray(t, dtype=np.float64) / self.duration, 0.0, 1.0)
        if self.shape is CrossfadeConfig.Shape.HANN:
            new = 0.5 * (1.0 - np.cos(np.pi * position))
        else:
            new = position

        return 1.0 - new, new


class CrossfadeConvolver(TimeDomainConvolver):
    """
    Two time-domain convolutions crossfaded after a filter switch (CF-TDC).

    During a fade both the old and the new impulse response run on the same
    input history; afterwards the old stream is dropped.
    """

    algorithm = "cf-tdc"

    def __init__(
        self,
        ir: ImpulseResponse,
        hop: int = 1,
        config: CrossfadeConfig | None = None,
        channels: int | None = None,
    ) -> None:
        """
        Initialize the convolver.

        Args:
            ir: Initial impulse response.
            hop: Samples per call. Defaults to 1.
            config: Crossfade configuration. Defaults to a Hann fade of 256 samples.
            channels: Fan a mono impulse response out to this many channels.
        """

        # Crossfade parameters.
        self.config = config or CrossfadeConfig()

        TimeDomainConvolver.__init__(self, ir, hop, channels)

    @property
    def switching_latency(self) -> int:
        return self.config.duration

    @property
    def fading(self) -> bool:
        """Whether a crossfade is running."""

        return self.fading_filter is not None

    def reset(self) -> None:
        TimeDomainConvolver.reset(self)

        # Outgoing filter while a fade runs.
        self.fading_filter: FloatArray | None = None
        # Samples since the start of the running fade.
        self.fade_position = 0

    def set_filter(self, ir: ImpulseResponse) -> None:
        """
        Stage a new impulse response; the fade starts at the next hop.

        Args:
            ir: Replacement impulse response.

        Raises:
            SwitchInProgressError: Raised if a crossfade is still running.
            IncompatibleFilterError: Raised if the impulse response does not match.
        """

        if self.fading:
            raise SwitchInProgressError(
                f"{self} is {self.fade_position} of {self.config.duration} samples "
                "into a crossfade."
            )

        TimeDomainConvolver.set_filter(self, ir)

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)

        # Start a fade from the active filter to the staged one.
        pending = self._take_pending()
        if pending is not None:
            self.fading_filter, self.filter = self.filter, pending
            self.fade_position = 0
            self.log(f"Crossfade of {self.config.duration} samples started.")

        signal = self._advance(frame)
        output = self._convolve(self.filter, signal)

        if self.fading_filter is not None:
            old_gain, new_gain = self.config.gains(self.fade_position + np.arange(self.hop))
            output = new_gain * output + old_gain * self._convolve(self.fading_filter, signal)

            self.fade_position += self.hop
            if self.fade_position >= self.config.duration:
                self.fading_filter = None
                self.log("Crossfade finished.")

        self.block_counter += 1
        return output


class OverlapAdd(BlockConvolver):
    """
    Overlap-add with rectangular blocks of N samples and transforms of 2N.

    The remainder of a block is computed with the filter that was active for
    that block, so the first block after a switch still carries the tail of
    the old impulse response.
    """

    algorithm = "ola"

    def __init__(self, ir: ImpulseResponse, channels: int | None = None) -> None:
        _check_block(ir.length)
        BlockConvolver.__init__(self, ir, ir.length, channels)

    def _prepare(self, taps: FloatArray) -> ComplexArray:
        return rfft(np.pad(taps, ((0, 0), (0, self.length))))

    def reset(self) -> None:
        StreamingProcessor.reset(self)

        # Second half of the previous inverse transform.
        self.remainder = np.zeros((self.channels, self.length))

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)
        self._apply_pending()

        block = np.pad(frame, ((0, 0), (0, self.length)))
        result = irfft(rfft(block) * self.filter)

        output = result[:, : self.length] + self.remainder
        self.remainder = result[:, self.length :]

        self.block_counter += 1
        return output


class OverlapSave(BlockConvolver):
    """Overlap-save with a sliding input window of 2N samples at hop N."""

    algorithm = "ols"

    def __init__(self, ir: ImpulseResponse, channels: int | None = None) -> None:
        _check_block(ir.length)
        BlockConvolver.__init__(self, ir, ir.length, channels)

    def _prepare(self, taps: FloatArray) -> ComplexArray:
        return rfft(np.pad(taps, ((0, 0), (0, self.length))))

    def reset(self) -> None:
        StreamingProcessor.reset(self)

        # Last 2N input samples.
        self.window = np.zeros((self.channels, 2 * self.length))

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)
        self._apply_pending()

        self.window = np.concatenate((self.window[:, self.length :], frame), axis=1)

        # Only the second half is free of circular wrap-around.
        output = irfft(rfft(self.window) * self.filter)[:, self.length :]

        self.block_counter += 1
        return output


class WeightedOverlapAdd(BlockConvolver):
    """
    Weighted overlap-add at 50 % overlap with square-root Hann windows.

    Every hop of N / 2 samples the last N input samples are weighted with the
    analysis window, zero-padded to 2N and filtered; the synthesis window is
    applied to the first N samples of the result and the tail is overlap-added
    without weighting. The overlapped windows sum to 2, which the output gain
    of 1/2 compensates.
    """

    algorithm = "wola"

    # Overlapping squared windows sum to 2.
    normalization_gain = 0.5

    def __init__(self, ir: ImpulseResponse, channels: int | None = None) -> None:
        if ir.length < 4:
            raise InvalidSizeError(f"WOLA needs N >= 4, got {ir.length}.")
        _check_block(ir.length)

        # Analysis and synthesis window of length N.
        self.window = np.sqrt(hann_window(ir.length // 2))

        BlockConvolver.__init__(self, ir, ir.length // 2, channels)

    @property
    def delay(self) -> int:
        return self.hop

    @property
    def switching_latency(self) -> int:
        return self.hop

    def _prepare(self, taps: FloatArray) -> ComplexArray:
        return rfft(np.pad(taps, ((0, 0), (0, self.length))))

    def reset(self) -> None:
        StreamingProcessor.reset(self)

        # Previous hop of input.
        self.history = np.zeros((self.channels, self.hop))
        # Pending overlap-add sums, 2N samples.
        self.accumulator = np.zeros((self.channels, 2 * self.length))

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)
        self._apply_pending()
        length = self.length

        block = np.zeros((self.channels, 2 * length))
        block[:, :length] = np.concatenate((self.history, frame), axis=1) * self.window
        self.history = frame.copy()

        result = irfft(rfft(block) * self.filter)
        result[:, :length] *= self.window
        self.accumulator += result

        output = self.normalization_gain * self.accumulator[:, : self.hop]
        self.accumulator = np.pad(self.accumulator[:, self.hop :], ((0, 0), (0, self.hop)))

        self.block_counter += 1
        return output
