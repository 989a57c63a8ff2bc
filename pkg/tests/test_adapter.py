"""Tests for tvolap.adapter."""

import numpy as np
import pytest

from tvolap.adapter import FrameAdapter
from tvolap.buffer import ImpulseResponse
from tvolap.engine import TvolapEngine


def chunked(adapter, signal, sizes):
    blocks, start = [], 0
    for size in sizes:
        blocks.append(adapter.process(signal[:, start : start + size]))
        assert blocks[-1].shape == (signal.shape[0], min(size, signal.shape[1] - start))
        start += size
    return np.concatenate(blocks, axis=1)


class TestFrameAdapter:
    def test_identity_delays_by_hop(self, rng):
        signal = rng.standard_normal((2, 100))
        adapter = FrameAdapter(16, 2, lambda frame: frame)
        output = chunked(adapter, signal, [3, 30, 1, 16, 50])
        assert adapter.delay() == 16
        np.testing.assert_array_equal(output[:, :16], 0.0)
        np.testing.assert_array_equal(output[:, 16:], signal[:, :-16])

    @pytest.mark.parametrize("sizes", [[128] * 16, [1] * 2048, [97, 500, 3, 1024, 424], [777] * 3])
    def test_engine_output_is_chunk_independent(self, rng, sizes):
        ir = ImpulseResponse(rng.standard_normal((2, 512)), 48000)
        signal = rng.standard_normal((2, sum(sizes)))

        engine = TvolapEngine.from_ir(ir, 128)
        direct = np.concatenate(
            [engine.process(signal[:, i : i + 128]) for i in range(0, signal.shape[1] - 127, 128)],
            axis=1,
        )

        engine.reset()
        adapter = FrameAdapter(128, 2, engine.process)
        output = chunked(adapter, signal, sizes)

        assert adapter.delay(engine.delay) == 256
        usable = direct.shape[1]
        np.testing.assert_allclose(output[:, 128 : 128 + usable - 128], direct[:, : usable - 128])

    def test_calls_processor_per_full_hop(self):
        calls = []

        def record(frame):
            calls.append(frame.copy())
            return frame

        adapter = FrameAdapter(4, 1, record)
        adapter.process(np.arange(10.0)[np.newaxis])
        assert len(calls) == 2
        np.testing.assert_array_equal(calls[1], [[4.0, 5.0, 6.0, 7.0]])
