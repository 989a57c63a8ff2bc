"""
Windows and partitions module.

Builds the periodic Hann analysis window and splits impulse responses into
non-overlapping partitions of length 2L, each zero-padded to 4L and
transformed with :func:`tvolap.kernel.rfft`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .buffer import ImpulseResponse
from .errors import InvalidInputError, InvalidSizeError
from .kernel import MIN_TRANSFORM_LENGTH, SpectrumFrame, irfft, rfft
from .typeutils import ComplexArray, FloatArray, is_power_of_two

logger = logging.getLogger(__name__)

# Hann windows overlapped by 50% sum to 2, so the output is halved.
DEFAULT_NORMALIZATION_GAIN = 0.5


def hann_window(hop: int) -> FloatArray:
    """
    Periodic Hann window ``1 - cos(2 pi n / 2L)`` of length 2L.

    The window peaks at 2 (n = L) and starts at 0; copies shifted by L add up
    to the constant 2.

    Args:
        hop: Hop size L.

    Raises:
        InvalidSizeError: Raised if L < 2.

    Returns:
        Window of length 2L.
    """

    if hop < 2:
        raise InvalidSizeError(f"Hop size must be at least 2, got {hop}.")

    return 1.0 - np.cos(2.0 * np.pi * np.arange(2 * hop) / (2 * hop))


def check_hop(hop: int) -> None:
    """
    Ensure the transform length 4L of a hop size is supported by the kernel.

    Args:
        hop: Hop size L.

    Raises:
        InvalidSizeError: Raised if 4L is not a power of two >= 8.
    """

    if hop < 2 or not is_power_of_two(4 * hop) or 4 * hop < MIN_TRANSFORM_LENGTH:
        raise InvalidSizeError(f"4L must be a power of two >= 8, got L = {hop}.")


@dataclass(frozen=True, eq=False)
class FilterPartitionSet:
    """
    Frequency-domain partitions H(k, m) of a multichannel impulse response.

    ``partitions`` has shape ``(channels, M, 2L + 1)``; partition m holds the
    transform of impulse response samples [2mL, 2mL + 2L) followed by 2L
    zeros. The set is immutable.
    """

    # Hop size L.
    hop: int
    # Partition spectra, shape (channels, M, 2L + 1).
    partitions: ComplexArray
    # Length of the impulse response before padding.
    source_length: int
    # Sample rate of the source impulse response.
    sample_rate: int
    # Gain applied by the engine at its output.
    normalization_gain: float = DEFAULT_NORMALIZATION_GAIN

    def __post_init__(self) -> None:
        check_hop(self.hop)

        partitions = np.array(self.partitions, dtype=np.complex128)
        assert partitions.ndim == 3, "Partitions must be shaped (channels, M, 2L + 1)."
        assert partitions.shape[2] == 2 * self.hop + 1, "Partition bins must match 4L."
        assert partitions.shape[1] >= 1, "At least one partition is required."

        partitions.flags.writeable = False
        object.__setattr__(self, "partitions", partitions)

    @property
    def channels(self) -> int:
        """Number of channels c."""

        return self.partitions.shape[0]

    @property
    def count(self) -> int:
        """Number of partitions M."""

        return self.partitions.shape[1]

    @property
    def transform_length(self) -> int:
        """Transform length 4L."""

        return 4 * self.hop

    def frame(self, channel: int, index: int) -> SpectrumFrame:
        """
        Get a single partition as a spectrum frame.

        Args:
            channel: Channel index.
            index: Partition index m.

        Returns:
            The partition spectrum H(k, m) of the channel.
        """

        return SpectrumFrame(self.partitions[channel, index], self.transform_length)

    def is_compatible(self, other: FilterPartitionSet) -> bool:
        """
        Determine if another set can replace this one inside an engine.

        Args:
            other: Candidate replacement.

        Returns:
            True if hop size, partition count and channel count agree.
        """

        return (
            self.hop == other.hop
            and self.count == other.count
            and self.channels == other.channels
        )


def partition(
    ir: ImpulseResponse,
    hop: int,
    count: int | None = None,
    normalization_gain: float = DEFAULT_NORMALIZATION_GAIN,
) -> FilterPartitionSet:
    """
    Split an impulse response into transformed partitions of length 2L.

    The tail is zero-padded so that M = ceil(N_IR / 2L).

    Args:
        ir: Impulse response to partition.
        hop: Hop size L.
        count: Pad with zero partitions up to this count. Defaults to the minimum.
        normalization_gain: Output gain for the engine. Defaults to 1/2.

    Raises:
        InvalidSizeError: Raised if 4L is not a supported transform length,
            or if ``count`` is smaller than the number of partitions needed.
        InvalidInputError: Raised if the impulse response is empty.

    Returns:
        The partition set.
    """

    check_hop(hop)
    if ir.frames < 1:
        raise InvalidInputError("Cannot partition an empty impulse response.")

    block = 2 * hop
    needed = -(-ir.length // block)
    count = needed if count is None else count
    if count < needed:
        raise InvalidSizeError(f"{ir.length} samples need {needed} partitions, got {count}.")

    # Rectangular slices of length 2L, each followed by 2L zeros.
    padded = np.zeros((ir.channels, count, 2 * block))
    padded[:, :, :block] = np.pad(
        ir.samples, ((0, 0), (0, count * block - ir.length))
    ).reshape(ir.channels, count, block)

    logger.debug("Partitioned %d samples into %d x %d.", ir.length, count, block)

    return FilterPartitionSet(
        hop=hop,
        partitions=rfft(padded),
        source_length=ir.length,
        sample_rate=ir.sample_rate,
        normalization_gain=normalization_gain,
    )


def reassemble(partition_set: FilterPartitionSet) -> ImpulseResponse:
    """
    Invert :func:`partition`.

    Args:
        partition_set: Partition set to invert.

    Returns:
        The impulse response zero-padded to M * 2L samples.
    """

    block = 2 * partition_set.hop
    slices = irfft(partition_set.partitions)[:, :, :block]
    return ImpulseResponse(
        slices.reshape(partition_set.channels, partition_set.count * block),
        partition_set.sample_rate,
    )
