"""
TVOLAP engine module.

Per hop of L input samples and per channel the engine

1. windows the last 2L input samples with the periodic Hann window,
   zero-pads them to 4L and transforms them into X(k, l),
2. stores X(k, l) in a delay line of 2M - 1 spectra,
3. accumulates Y(k, l) = sum_m H(k, m) X(k, l - 2m) (every second spectrum),
4. inverse-transforms Y into the intermediate block y (4L samples),
5. overlap-adds in two steps: the left half of y plus the right half of the
   block from two hops earlier gives y_hat (2L samples); the first L samples
   of y_hat plus the carried second half of the previous y_hat are emitted.

Every output sample therefore sums the four intermediate blocks that overlap
it at hop L. A filter exchange replaces all partitions at once before step 3;
the stored input spectra are kept, so buffered input is re-filtered by the
new response, which produces a Hann crossfade of width L.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import IncompatibleFilterError
from .kernel import irfft, mac_into, rfft
from .partitions import FilterPartitionSet, hann_window, partition
from .processor import StreamingProcessor

if TYPE_CHECKING:
    from .buffer import ImpulseResponse
    from .typeutils import FloatArray


@dataclass
class OperationCounts:
    """Numbers of transforms and spectral multiply-accumulates."""

    forward: int = 0
    mac: int = 0
    inverse: int = 0

    def __add__(self, other: OperationCounts) -> OperationCounts:
        return OperationCounts(
            self.forward + other.forward,
            self.mac + other.mac,
            self.inverse + other.inverse,
        )


class TvolapEngine(StreamingProcessor):
    """Time-variant overlap-add in partitions."""

    algorithm = "tvolap"

    def __init__(self, partition_set: FilterPartitionSet) -> None:
        """
        Initialize the engine with all state zeroed.

        Args:
            partition_set: Initial partition set; fixes L, M and the channel count.
        """

        StreamingProcessor.__init__(
            self, partition_set.hop, partition_set.channels, partition_set.sample_rate
        )

        # Partition count M.
        self.count = partition_set.count

        # Active and staged partition sets.
        self.filter = partition_set
        self.pending_filter: FilterPartitionSet | None = None
        self._lock = threading.Lock()

        # Analysis window of length 2L.
        self.window = hann_window(self.hop)

        # Cumulative and last-hop operation counts.
        self.counts = OperationCounts()
        self.hop_counts = OperationCounts()

        self.reset()

    @classmethod
    def from_ir(
        cls, ir: ImpulseResponse, hop: int, channels: int | None = None
    ) -> TvolapEngine:
        """
        Partition an impulse response and create an engine for it.

        Args:
            ir: Impulse response.
            hop: Hop size L.
            channels: Fan a mono impulse response out to this many channels.

        Returns:
            The engine.
        """

        return cls(partition(ir.fan_out(channels or ir.channels), hop))

    @property
    def depth(self) -> int:
        """Number of spectra in the delay line (2M - 1)."""

        return 2 * self.count - 1

    @property
    def delay(self) -> int:
        return self.hop

    @property
    def switching_latency(self) -> int:
        return self.hop

    def reset(self) -> None:
        StreamingProcessor.reset(self)

        bins = 2 * self.hop + 1

        # Previous L input samples (left half of the next 2L block).
        self.input_history = np.zeros((self.channels, self.hop))
        # Ring of input spectra X(k, l - i), i = 0 .. 2M - 2.
        self.spectral_delay_line = np.zeros(
            (self.channels, self.depth, bins), dtype=np.complex128
        )
        self._head = 0
        # Right halves of the intermediate blocks of the last two hops, by parity.
        self.tail = np.zeros((2, self.channels, 2 * self.hop))
        # Second half of the previous y_hat block.
        self.carry = np.zeros((self.channels, self.hop))

    def exchange_filter(self, new_filter: FilterPartitionSet) -> None:
        """
        Stage a replacement partition set for the next block boundary.

        Args:
            new_filter: Replacement set with identical L, M and channel count.

        Raises:
            IncompatibleFilterError: Raised if L, M, the channel count or the
                sample rate differ.
        """

        if not self.filter.is_compatible(new_filter):
            raise IncompatibleFilterError(
                f"{self} runs L={self.hop}, M={self.count}, c={self.channels}; got "
                f"L={new_filter.hop}, M={new_filter.count}, c={new_filter.channels}. "
                "Re-partition the impulse response instead."
            )

        if new_filter.sample_rate != self.sample_rate:
            raise IncompatibleFilterError(
                f"{self} runs at {self.sample_rate} Hz, got partitions at "
                f"{new_filter.sample_rate} Hz."
            )

        with self._lock:
            self.pending_filter = new_filter

        self.log(f"Staged filter exchange after hop {self.block_counter}.")

    def check_filter(self, ir: ImpulseResponse) -> None:
        if ir.channels not in (1, self.channels):
            raise IncompatibleFilterError(
                f"{self} has {self.channels} channels, got an impulse response "
                f"with {ir.channels}."
            )

        if ir.length > 2 * self.hop * self.count:
            raise IncompatibleFilterError(
                f"{self} holds {self.count} partitions of {2 * self.hop} samples, "
                f"got an impulse response of {ir.length} samples."
            )

        if ir.sample_rate != self.sample_rate:
            raise IncompatibleFilterError(
                f"{self} runs at {self.sample_rate} Hz, got {ir.sample_rate} Hz."
            )

    def set_filter(self, ir: ImpulseResponse) -> None:
        self.check_filter(ir)
        self.exchange_filter(partition(ir.fan_out(self.channels), self.hop, self.count))

    def _apply_pending(self) -> None:
        with self._lock:
            pending, self.pending_filter = self.pending_filter, None

        if pending is not None:
            self.filter = pending

    def process(self, frame: FloatArray) -> FloatArray:
        frame = self.check_frame(frame)
        channels, hop = self.channels, self.hop

        # Assemble and window the 2L block, then zero-pad it to 4L.
        block = np.zeros((channels, 4 * hop))
        block[:, :hop] = self.input_history
        block[:, hop : 2 * hop] = frame
        block[:, : 2 * hop] *= self.window
        self.input_history = frame.copy()

        # Push X(k, l) into the delay line.
        self._head = (self._head + 1) % self.depth
        self.spectral_delay_line[:, self._head] = rfft(block)

        # Exchanged partitions take effect for this whole block.
        self._apply_pending()

        # Y(k, l) = sum_m H(k, m) X(k, l - 2m).
        partitions = self.filter.partitions
        spectrum = np.zeros((channels, 2 * hop + 1), dtype=np.complex128)
        for m in range(self.count):
            index = (self._head - 2 * m) % self.depth
            mac_into(spectrum, partitions[:, m], self.spectral_delay_line[:, index])

        intermediate = irfft(spectrum)

        # First step: left half plus the right half from two hops earlier.
        slot = self.block_counter % 2
        y_hat = intermediate[:, : 2 * hop] + self.tail[slot]
        self.tail[slot] = intermediate[:, 2 * hop :]

        # Second step: blocks shifted by L.
        output = self.filter.normalization_gain * (y_hat[:, :hop] + self.carry)
        self.carry = y_hat[:, hop:].copy()

        self.hop_counts = OperationCounts(channels, channels * self.count, channels)
        self.counts = self.counts + self.hop_counts
        self.block_counter += 1

        return output
