"""Tests for tvolap.engine."""

import numpy as np
import pytest

from tvolap.buffer import AudioBuffer, ImpulseResponse
from tvolap.engine import OperationCounts, TvolapEngine
from tvolap.errors import IncompatibleFilterError, InvalidInputError, InvalidSizeError
from tvolap.partitions import partition
from tvolap.reference import direct_convolve


def run_hops(engine, signal, switch=None):
    """Feed a (channels, frames) signal hop by hop; ``switch`` is (hop index, ir)."""

    hop = engine.hop
    blocks = []
    for index in range(signal.shape[1] // hop):
        if switch is not None and index == switch[0]:
            engine.set_filter(switch[1])
        blocks.append(engine.process(signal[:, index * hop : (index + 1) * hop]))
    return np.concatenate(blocks, axis=1)


# ---------------------------------------------------------------------------
# Time-invariant filtering
# ---------------------------------------------------------------------------


class TestTimeInvariant:
    @pytest.mark.parametrize("n_ir", [512, 1024, 2048])
    @pytest.mark.parametrize("hop", [128, 256])
    def test_matches_direct_convolution(self, rng, n_ir, hop):
        frames = 4 * n_ir
        x = AudioBuffer(rng.standard_normal(frames), 48000)
        h = ImpulseResponse(rng.standard_normal(n_ir) / np.sqrt(n_ir), 48000)

        output = run_hops(TvolapEngine.from_ir(h, hop), x.samples)
        expected = direct_convolve(x, h).samples[:, : frames - hop]

        np.testing.assert_allclose(output[:, hop:], expected, atol=1e-9)

    def test_delta_delays_by_hop(self, rng):
        x = rng.standard_normal((1, 1024))
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(512), 128)
        output = run_hops(engine, x)
        np.testing.assert_allclose(output[:, 128:], x[:, :-128], atol=1e-12)

    def test_stereo_ir_with_fanned_input(self, rng):
        h = ImpulseResponse(rng.standard_normal((2, 300)), 48000)
        x = AudioBuffer(rng.standard_normal(2048), 48000)
        engine = TvolapEngine.from_ir(h, 64)
        assert engine.channels == 2

        output = run_hops(engine, x.fan_out(2).samples)
        expected = direct_convolve(x, h).samples[:, : 2048 - 64]
        np.testing.assert_allclose(output[:, 64:], expected, atol=1e-9)

    def test_mono_ir_fanned_out(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64, channels=3)
        assert engine.channels == 3
        assert engine.filter.channels == 3

    def test_is_linear(self, rng):
        h = ImpulseResponse(rng.standard_normal(1024) / 32, 48000)
        x1, x2 = rng.standard_normal((2, 1, 4096))

        y1 = run_hops(TvolapEngine.from_ir(h, 128), x1)
        y2 = run_hops(TvolapEngine.from_ir(h, 128), x2)
        combined = run_hops(TvolapEngine.from_ir(h, 128), 0.7 * x1 - 1.9 * x2)

        np.testing.assert_allclose(combined, 0.7 * y1 - 1.9 * y2, atol=1e-10)

    def test_reset_restores_initial_state(self, rng):
        x = rng.standard_normal((1, 1024))
        engine = TvolapEngine.from_ir(ImpulseResponse(rng.standard_normal(256), 48000), 64)
        first = run_hops(engine, x)
        engine.reset()
        assert engine.block_counter == 0
        np.testing.assert_array_equal(run_hops(engine, x), first)


# ---------------------------------------------------------------------------
# Filter exchange
# ---------------------------------------------------------------------------


class TestFilterExchange:
    def test_polarity_flip_is_half_cosine(self):
        hop = 256
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(2048), hop)
        assert engine.count == 4

        flip = (10, ImpulseResponse.delta(2048, gain=-1.0))
        output = run_hops(engine, np.ones((1, 20 * hop)), flip)[0]

        u = np.arange(hop)
        np.testing.assert_allclose(output[hop : 10 * hop], 1.0, atol=1e-9)
        np.testing.assert_allclose(output[10 * hop : 11 * hop], np.cos(np.pi * u / hop), atol=1e-9)
        np.testing.assert_allclose(output[11 * hop :], -1.0, atol=1e-9)

    def test_settles_on_new_filter(self, rng):
        hop = 128
        x = rng.standard_normal((1, 40 * hop))
        old = ImpulseResponse(rng.standard_normal(1024) / 32, 48000)
        new = ImpulseResponse(rng.standard_normal(1024) / 32, 48000)

        output = run_hops(TvolapEngine.from_ir(old, hop), x, (10, new))
        steady = run_hops(TvolapEngine.from_ir(new, hop), x)

        # Old-filter tails have left the overlap-add buffers by then.
        settled = 11 * hop + 1024
        np.testing.assert_allclose(output[:, settled:], steady[:, settled:], atol=1e-9)
        assert not np.allclose(output[:, 10 * hop : 11 * hop], steady[:, 10 * hop : 11 * hop])

    def test_last_staged_filter_wins(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        engine.set_filter(ImpulseResponse.delta(256, gain=2.0))
        engine.set_filter(ImpulseResponse.delta(256, gain=-1.0))
        output = run_hops(engine, np.ones((1, 640)))
        np.testing.assert_allclose(output[0, 128:], -1.0, atol=1e-12)

    def test_exchange_partition_set(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        engine.exchange_filter(partition(ImpulseResponse.delta(256, gain=3.0), 64))
        assert engine.pending_filter is not None
        engine.process(np.zeros((1, 64)))
        assert engine.pending_filter is None
        assert engine.filter.partitions[0, 0, 0].real == pytest.approx(3.0)

    def test_shorter_ir_is_padded(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(1024), 128)
        engine.set_filter(ImpulseResponse.delta(100))
        engine.process(np.zeros((1, 128)))
        assert engine.filter.count == 4

    def test_rejects_different_partition_count(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(1024), 128)
        with pytest.raises(IncompatibleFilterError, match="Re-partition"):
            engine.exchange_filter(partition(ImpulseResponse.delta(2048), 128))

    def test_rejects_longer_ir(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(1024), 128)
        with pytest.raises(IncompatibleFilterError, match="partitions"):
            engine.set_filter(ImpulseResponse.delta(1025))

    def test_rejects_channel_mismatch(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256, channels=2), 64)
        with pytest.raises(IncompatibleFilterError, match="channels"):
            engine.set_filter(ImpulseResponse.delta(256, channels=3))

    def test_rejects_sample_rate_mismatch(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        with pytest.raises(IncompatibleFilterError, match="Hz"):
            engine.set_filter(ImpulseResponse.delta(256, 44100))
        with pytest.raises(IncompatibleFilterError, match="Hz"):
            engine.exchange_filter(partition(ImpulseResponse.delta(256, 44100), 64))

    def test_identical_filter_leaves_output_unchanged(self, rng):
        h = ImpulseResponse(rng.standard_normal(1024) / 32, 48000)
        x = rng.standard_normal((1, 40 * 128))

        switched = run_hops(TvolapEngine.from_ir(h, 128), x, (10, h))
        steady = run_hops(TvolapEngine.from_ir(h, 128), x)
        np.testing.assert_array_equal(switched, steady)


# ---------------------------------------------------------------------------
# Constant load and bookkeeping
# ---------------------------------------------------------------------------


class TestBookkeeping:
    def test_constant_operations_across_exchange(self, rng):
        engine = TvolapEngine.from_ir(ImpulseResponse(rng.standard_normal((2, 2048)), 48000), 256)
        per_hop = []
        for index in range(16):
            if index == 7:
                engine.set_filter(ImpulseResponse(rng.standard_normal((2, 2048)), 48000))
            engine.process(rng.standard_normal((2, 256)))
            per_hop.append(engine.hop_counts)

        assert all(counts == OperationCounts(2, 8, 2) for counts in per_hop)
        assert engine.counts == OperationCounts(32, 128, 32)

    def test_latencies(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(2048), 256)
        assert engine.delay == 256
        assert engine.latency == 512
        assert engine.switching_latency == 256
        assert engine.depth == 7

    def test_rejects_wrong_frame_length(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        with pytest.raises(InvalidSizeError):
            engine.process(np.zeros((1, 63)))

    def test_rejects_wrong_channel_count(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        with pytest.raises(InvalidInputError):
            engine.process(np.zeros((2, 64)))

    def test_display_name(self):
        engine = TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
        assert str(engine).startswith("TvolapEngine-")
        assert engine == engine
        assert engine != TvolapEngine.from_ir(ImpulseResponse.delta(256), 64)
