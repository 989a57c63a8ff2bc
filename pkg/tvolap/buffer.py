"""Audio buffer module."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .typeutils import FloatArray


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """
    Planar multichannel audio.

    ``samples`` has shape ``(channels, frames)`` and is stored as read-only
    64-bit floats; every channel therefore has the same length.
    """

    # Sample data, one row per channel.
    samples: FloatArray
    # Sample rate in Hz.
    sample_rate: int

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64)

        # Promote a single channel to a (1, frames) array.
        if samples.ndim == 1:
            samples = samples[np.newaxis, :]

        if samples.ndim != 2 or samples.shape[0] < 1:
            raise InvalidInputError(
                f"Expected samples of shape (channels, frames), got {samples.shape}."
            )

        if self.sample_rate <= 0:
            raise InvalidInputError(f"Sample rate must be positive, got {self.sample_rate}.")

        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @property
    def channels(self) -> int:
        """Number of channels."""

        return self.samples.shape[0]

    @property
    def frames(self) -> int:
        """Number of samples per channel."""

        return self.samples.shape[1]

    @property
    def duration(self) -> float:
        """Duration in seconds."""

        return self.frames / self.sample_rate

    def fan_out(self, channels: int) -> AudioBuffer:
        """
        Duplicate a mono buffer across several channels.

        Args:
            channels: Number of channels to produce.

        Raises:
            InvalidInputError: Raised if the buffer is neither mono nor already
                has the requested channel count.

        Returns:
            Buffer with the requested channel count.
        """

        if self.channels == channels:
            return self

        if self.channels != 1:
            raise InvalidInputError(
                f"Cannot fan out {self.channels} channels to {channels} channels."
            )

        return type(self)(np.repeat(self.samples, channels, axis=0), self.sample_rate)

    def padded(self, frames: int) -> AudioBuffer:
        """
        Zero-pad (never truncate) every channel to a number of frames.

        Args:
            frames: Target length.

        Returns:
            Padded buffer.
        """

        if frames <= self.frames:
            return self

        return type(self)(
            np.pad(self.samples, ((0, 0), (0, frames - self.frames))),
            self.sample_rate,
        )

    def __len__(self) -> int:
        return self.frames


class ImpulseResponse(AudioBuffer):
    """
    Multichannel finite impulse response.

    Identical to :class:`AudioBuffer`, with at least one sample per channel.
    """

    def __post_init__(self) -> None:
        AudioBuffer.__post_init__(self)

        if self.frames < 1:
            raise InvalidInputError("Impulse response must contain at least one sample.")

    @property
    def length(self) -> int:
        """Impulse response length N_IR."""

        return self.frames

    @classmethod
    def delta(
        cls,
        length: int = 1,
        sample_rate: int = 48000,
        gain: float = 1.0,
        position: int = 0,
        channels: int = 1,
    ) -> ImpulseResponse:
        """
        Create a (scaled, delayed) unit impulse.

        Args:
            length: Impulse response length. Defaults to 1.
            sample_rate: Sample rate in Hz. Defaults to 48000.
            gain: Amplitude of the impulse. Defaults to 1.0.
            position: Index of the impulse. Defaults to 0.
            channels: Number of channels. Defaults to 1.

        Returns:
            The impulse response.
        """

        if not 0 <= position < length:
            raise InvalidInputError(f"Impulse position {position} outside length {length}.")

        samples = np.zeros((channels, length))
        samples[:, position] = gain
        return cls(samples, sample_rate)
