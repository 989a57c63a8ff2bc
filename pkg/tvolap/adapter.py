"""Frame adapter module."""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import numpy as np

if TYPE_CHECKING:
    from .typeutils import FloatArray


class FrameAdapter:
    """
    Adapt a callback that processes fixed blocks of ``hop`` samples to host
    chunks of any size, at the cost of one hop of extra delay.

    The internal buffer holds ``hop`` samples per channel: the first
    ``filled`` are unprocessed input, the rest are processed output waiting to
    be emitted. Once the input part fills the buffer it is processed in place.
    """

    def __init__(
        self,
        hop: int,
        channels: int,
        process_func: Callable[[FloatArray], FloatArray],
    ) -> None:
        """
        Initialize the adapter.

        Args:
            hop: Block size accepted by ``process_func``.
            channels: Number of channels.
            process_func: Maps a (channels, hop) block to a (channels, hop) block.
        """

        self.hop = hop
        self.channels = channels
        self.process_func = process_func

        # Input samples followed by output samples; starts as one hop of silence.
        self.buffer = np.zeros((channels, hop))
        self.filled = 0

    def delay(self, process_delay: int = 0) -> int:
        """
        End-to-end delay of adapter and callback.

        Args:
            process_delay: Stream delay of the callback. Defaults to 0.

        Returns:
            Delay in samples.
        """

        return self.hop + process_delay

    def process(self, chunk: FloatArray) -> FloatArray:
        """
        Process a chunk of any length.

        Args:
            chunk: Input of shape (channels, n).

        Returns:
            Output of shape (channels, n).
        """

        chunk = np.asarray(chunk, dtype=np.float64)
        output = np.zeros_like(chunk)
        done, total = 0, chunk.shape[1]

        while done < total:
            # Swap as many input samples into the buffer as output samples are waiting.
            count = min(total - done, self.hop - self.filled)
            buffered = slice(self.filled, self.filled + count)
            chunked = slice(done, done + count)

            output[:, chunked] = self.buffer[:, buffered]
            self.buffer[:, buffered] = chunk[:, chunked]

            self.filled += count
            done += count

            # A full hop of input turns into a full hop of output.
            if self.filled == self.hop:
                self.buffer = np.array(self.process_func(self.buffer), dtype=np.float64)
                self.filled = 0

        return output
