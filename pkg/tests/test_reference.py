"""Tests for tvolap.reference (comparison convolution engines)."""

import numpy as np
import pytest

from tvolap.buffer import AudioBuffer, ImpulseResponse
from tvolap.errors import (
    IncompatibleFilterError,
    InvalidConfigurationError,
    InvalidInputError,
    InvalidSizeError,
    SwitchInProgressError,
)
from tvolap.reference import (
    CrossfadeConfig,
    CrossfadeConvolver,
    OverlapAdd,
    OverlapSave,
    TimeDomainConvolver,
    WeightedOverlapAdd,
    direct_convolve,
)


def run_hops(processor, signal, switch=None):
    hop = processor.hop
    blocks = []
    for index in range(signal.shape[1] // hop):
        if switch is not None and index == switch[0]:
            processor.set_filter(switch[1])
        blocks.append(processor.process(signal[:, index * hop : (index + 1) * hop]))
    return np.concatenate(blocks, axis=1)


# ---------------------------------------------------------------------------
# Direct convolution
# ---------------------------------------------------------------------------


class TestDirectConvolve:
    def test_full_length(self):
        result = direct_convolve(AudioBuffer(np.ones(3), 48000), ImpulseResponse(np.ones(2), 48000))
        np.testing.assert_array_equal(result.samples, [[1, 2, 2, 1]])

    def test_fans_out_mono_input(self):
        h = ImpulseResponse(np.array([[1.0, 0.0], [0.0, 2.0]]), 48000)
        result = direct_convolve(AudioBuffer(np.ones(2), 48000), h)
        np.testing.assert_array_equal(result.samples, [[1, 1, 0], [0, 2, 2]])

    def test_rejects_empty_input(self):
        with pytest.raises(InvalidInputError):
            direct_convolve(AudioBuffer(np.zeros((1, 0)), 48000), ImpulseResponse.delta(4))


# ---------------------------------------------------------------------------
# Time-invariant equivalence
# ---------------------------------------------------------------------------


class TestTimeInvariant:
    @pytest.mark.parametrize("kind", [OverlapAdd, OverlapSave])
    @pytest.mark.parametrize("n_ir", [512, 1024, 2048])
    def test_block_convolvers_match_direct(self, rng, kind, n_ir):
        x = AudioBuffer(rng.standard_normal(4 * n_ir), 48000)
        h = ImpulseResponse(rng.standard_normal(n_ir) / np.sqrt(n_ir), 48000)

        output = run_hops(kind(h), x.samples)
        np.testing.assert_allclose(output, direct_convolve(x, h).samples[:, : 4 * n_ir], atol=1e-9)

    @pytest.mark.parametrize("hop", [1, 7, 64])
    def test_time_domain_matches_direct(self, rng, hop):
        x = AudioBuffer(rng.standard_normal(448), 48000)
        h = ImpulseResponse(rng.standard_normal(50), 48000)

        output = run_hops(TimeDomainConvolver(h, hop), x.samples)
        np.testing.assert_allclose(output, direct_convolve(x, h).samples[:, :448], atol=1e-12)

    @pytest.mark.parametrize("n_ir", [512, 2048])
    def test_wola_identity_reconstruction(self, rng, n_ir):
        x = rng.standard_normal((2, 4 * n_ir))
        wola = WeightedOverlapAdd(ImpulseResponse.delta(n_ir, channels=2))
        output = run_hops(wola, x)
        delay = n_ir // 2
        np.testing.assert_allclose(output[:, delay:], x[:, :-delay], atol=1e-9)

    def test_latencies(self):
        ir = ImpulseResponse.delta(512)
        assert OverlapAdd(ir).latency == 512
        assert OverlapSave(ir).latency == 512
        assert OverlapAdd(ir).switching_latency == 0
        wola = WeightedOverlapAdd(ir)
        assert (wola.hop, wola.delay, wola.latency, wola.switching_latency) == (256, 256, 512, 256)
        assert TimeDomainConvolver(ir, 64).latency == 0
        assert CrossfadeConvolver(ir, 64, CrossfadeConfig(128)).switching_latency == 128

    def test_rejects_unsupported_block(self):
        with pytest.raises(InvalidSizeError):
            OverlapAdd(ImpulseResponse.delta(100))
        with pytest.raises(InvalidSizeError, match="N >= 4"):
            WeightedOverlapAdd(ImpulseResponse.delta(2))


# ---------------------------------------------------------------------------
# Hard switches
# ---------------------------------------------------------------------------


class TestHardSwitch:
    def test_ola_remainder_keeps_old_filter(self):
        n, lag = 64, 10
        old = ImpulseResponse.delta(n, position=lag)
        new = ImpulseResponse.delta(n, gain=-1.0, position=lag)

        output = run_hops(OverlapAdd(old), np.ones((1, 8 * n)), (4, new))[0]

        np.testing.assert_allclose(output[lag : 4 * n], 1.0, atol=1e-12)
        np.testing.assert_allclose(output[4 * n : 4 * n + lag], 1.0, atol=1e-12)
        np.testing.assert_allclose(output[4 * n + lag :], -1.0, atol=1e-12)

    def test_ols_switches_at_block_boundary(self):
        n, lag = 64, 10
        old = ImpulseResponse.delta(n, position=lag)
        new = ImpulseResponse.delta(n, gain=-1.0, position=lag)

        output = run_hops(OverlapSave(old), np.ones((1, 8 * n)), (4, new))[0]

        np.testing.assert_allclose(output[lag : 4 * n], 1.0, atol=1e-12)
        np.testing.assert_allclose(output[4 * n :], -1.0, atol=1e-12)

    def test_tdc_switches_at_hop_boundary(self):
        output = run_hops(
            TimeDomainConvolver(ImpulseResponse.delta(16), 4),
            np.ones((1, 32)),
            (3, ImpulseResponse.delta(16, gain=-1.0)),
        )[0]
        np.testing.assert_array_equal(output, [1.0] * 12 + [-1.0] * 20)

    def test_rejects_length_mismatch(self):
        with pytest.raises(IncompatibleFilterError, match="N = 64"):
            OverlapAdd(ImpulseResponse.delta(64)).set_filter(ImpulseResponse.delta(32))

    def test_rejects_sample_rate_mismatch(self):
        with pytest.raises(IncompatibleFilterError, match="Hz"):
            OverlapSave(ImpulseResponse.delta(64)).set_filter(ImpulseResponse.delta(64, 44100))

    def test_rejects_channel_mismatch(self):
        processor = TimeDomainConvolver(ImpulseResponse.delta(8, channels=2))
        with pytest.raises(IncompatibleFilterError, match="channels"):
            processor.set_filter(ImpulseResponse.delta(8, channels=3))


# ---------------------------------------------------------------------------
# Crossfaded time-domain convolution
# ---------------------------------------------------------------------------


class TestCrossfade:
    def test_hann_gains(self):
        old, new = CrossfadeConfig(4).gains(np.arange(6))
        quarter = 0.5 * np.cos(np.pi / 4)
        np.testing.assert_allclose(new, [0.0, 0.5 - quarter, 0.5, 0.5 + quarter, 1.0, 1.0])
        np.testing.assert_allclose(old + new, 1.0)

    def test_linear_gains(self):
        old, new = CrossfadeConfig(4, CrossfadeConfig.Shape.LINEAR).gains(np.arange(5))
        np.testing.assert_allclose(new, [0.0, 0.25, 0.5, 0.75, 1.0])
        np.testing.assert_allclose(old, [1.0, 0.75, 0.5, 0.25, 0.0])

    def test_rejects_empty_fade(self):
        with pytest.raises(InvalidConfigurationError, match="at least 1"):
            CrossfadeConfig(0)

    def test_polarity_flip_follows_cosine(self):
        hop = 256
        processor = CrossfadeConvolver(ImpulseResponse.delta(2048), hop, CrossfadeConfig(hop))
        flip = (5, ImpulseResponse.delta(2048, gain=-1.0))
        output = run_hops(processor, np.ones((1, 10 * hop)), flip)[0]

        np.testing.assert_allclose(output[: 5 * hop], 1.0, atol=1e-12)
        np.testing.assert_allclose(
            output[5 * hop : 6 * hop], np.cos(np.pi * np.arange(hop) / hop), atol=1e-12
        )
        np.testing.assert_allclose(output[6 * hop :], -1.0, atol=1e-12)
        assert not processor.fading

    def test_switch_during_fade_is_rejected(self):
        processor = CrossfadeConvolver(ImpulseResponse.delta(32), 64, CrossfadeConfig(256))
        processor.set_filter(ImpulseResponse.delta(32, gain=-1.0))
        processor.process(np.ones((1, 64)))
        assert processor.fading
        assert processor.fade_position == 64

        with pytest.raises(SwitchInProgressError, match="crossfade"):
            processor.set_filter(ImpulseResponse.delta(32))

        for _ in range(3):
            processor.process(np.ones((1, 64)))
        assert not processor.fading
        processor.set_filter(ImpulseResponse.delta(32))

    def test_single_sample_fade_is_hard_switch(self):
        processor = CrossfadeConvolver(ImpulseResponse.delta(8), 4, CrossfadeConfig(1))
        flip = (2, ImpulseResponse.delta(8, gain=-1.0))
        output = run_hops(processor, np.ones((1, 16)), flip)[0]
        np.testing.assert_allclose(output, [1.0] * 9 + [-1.0] * 7, atol=1e-12)

    def test_fade_runs_on_shared_history(self, rng):
        x = rng.standard_normal((1, 512))
        old = ImpulseResponse(rng.standard_normal(64), 48000)
        new = ImpulseResponse(rng.standard_normal(64), 48000)
        config = CrossfadeConfig(128, CrossfadeConfig.Shape.LINEAR)

        output = run_hops(CrossfadeConvolver(old, 64, config), x, (2, new))[0]
        y_old = np.convolve(x[0], old.samples[0])[:512]
        y_new = np.convolve(x[0], new.samples[0])[:512]
        g = np.clip(np.arange(384) / 128, 0.0, 1.0)

        np.testing.assert_allclose(output[:128], y_old[:128], atol=1e-10)
        expected = (1 - g) * y_old[128:] + g * y_new[128:]
        np.testing.assert_allclose(output[128:], expected, atol=1e-10)
