"""
Processor module.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING
from uuid import uuid4

import numpy as np

from .errors import InvalidInputError, InvalidSizeError

if TYPE_CHECKING:
    from .buffer import ImpulseResponse
    from .typeutils import FloatArray

logger = logging.getLogger(__name__)


class StreamingProcessor:
    """
    A streaming processor consumes and produces exactly ``hop`` samples per
    channel on every call of :meth:`process`.

    Filter changes requested through :meth:`set_filter` are observed at the
    next block boundary, never in the middle of a block.

    Two delays are reported:

    .. table::

        +-----------+---------------------------------------------------------+
        | Attribute | Meaning                                                 |
        +===========+=========================================================+
        | latency   | Audio latency: one hop of input buffering plus delay    |
        +-----------+---------------------------------------------------------+
        | delay     | Offset between the input and the output stream when     |
        |           | hops are fed directly                                   |
        +-----------+---------------------------------------------------------+
    """

    # Short algorithm name used in reports and file names.
    algorithm = "processor"

    def __init__(self, hop: int, channels: int, sample_rate: int) -> None:
        """
        Initialize the processor.

        Args:
            hop: Samples per channel consumed and produced by each call.
            channels: Number of independent lanes.
            sample_rate: Sample rate in Hz.
        """

        # Samples per call.
        self.hop = hop
        # Number of lanes.
        self.channels = channels
        # Sample rate in Hz.
        self.sample_rate = sample_rate

        # Number of processed hops.
        self.block_counter = 0

        # ID for uniquely identifying the processor.
        self.uuid = uuid4()

    @property
    def delay(self) -> int:
        """Stream offset in samples."""

        return 0

    @property
    def latency(self) -> int:
        """Audio latency in samples."""

        return self.hop + self.delay

    @property
    def switching_latency(self) -> int:
        """Samples between a filter exchange and a fully settled output."""

        return 0

    def check_frame(self, frame: FloatArray) -> FloatArray:
        """
        Validate one hop of input.

        Args:
            frame: Input of shape (channels, hop).

        Raises:
            InvalidInputError: Raised on a channel count mismatch.
            InvalidSizeError: Raised if the frame length is not the hop size.

        Returns:
            The frame as a float64 array.
        """

        frame = np.asarray(frame, dtype=np.float64)
        if frame.ndim != 2 or frame.shape[0] != self.channels:
            raise InvalidInputError(
                f"{self} expects {self.channels} channels, got shape {frame.shape}."
            )

        if frame.shape[1] != self.hop:
            raise InvalidSizeError(
                f"{self} expects {self.hop} samples per channel, got {frame.shape[1]}."
            )

        return frame

    def check_filter(self, ir: ImpulseResponse) -> None:
        """
        Validate that an impulse response may be used by this processor.

        Args:
            ir: Impulse response to validate.
        """

    def process(self, frame: FloatArray) -> FloatArray:
        """
        Process one hop.

        Args:
            frame: Input of shape (channels, hop).

        Returns:
            Output of shape (channels, hop).
        """

        raise NotImplementedError

    def set_filter(self, ir: ImpulseResponse) -> None:
        """
        Stage a new impulse response for the next block boundary.

        Args:
            ir: The replacement impulse response.
        """

        raise NotImplementedError

    def reset(self) -> None:
        """Zero all internal state."""

        self.block_counter = 0

    def log(self, message: str) -> None:
        """
        Log a message related to this processor.

        Args:
            message: Message to log.
        """

        logger.info("[%s] %s", str(self).upper(), message)

    def __str__(self) -> str:
        return f"{self.__class__.__name__}-{str(self.uuid)[:4]}"

    def __eq__(self, __o: object) -> bool:
        return self.uuid == __o.uuid if isinstance(__o, StreamingProcessor) else False

    def __hash__(self) -> int:
        return self.uuid.__hash__()
