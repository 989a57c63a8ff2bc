"""Tests for tvolap.signals."""

import numpy as np
import pytest
from scipy.signal import welch

from tvolap.errors import InvalidFrequencyError, InvalidInputError
from tvolap.signals import binaural_surrogate, gen_ones, gen_pink, gen_sine, room_surrogate


def upcrossings(samples):
    """Negative-to-non-negative transitions, counted around the wrap."""

    return int(np.sum((samples < 0) & (np.roll(samples, -1) >= 0)))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


class TestGenerators:
    def test_ones(self):
        buffer = gen_ones(4)
        np.testing.assert_array_equal(buffer.samples, [[1.0, 1.0, 1.0, 1.0]])
        assert buffer.sample_rate == 48000

    def test_sine_upcrossings(self):
        sine = gen_sine(750.0, 48000, 48000)
        assert upcrossings(sine.samples[0]) == 750

    def test_sine_amplitude(self):
        sine = gen_sine(1000.0, 480, 48000, amplitude=0.5)
        assert np.max(np.abs(sine.samples)) == pytest.approx(0.5, abs=1e-3)
        assert sine.samples[0, 0] == 0.0

    @pytest.mark.parametrize("freq", [24000.0, 30000.0, -1.0])
    def test_sine_rejects_aliasing(self, freq):
        with pytest.raises(InvalidFrequencyError):
            gen_sine(freq, 16, 48000)

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            gen_ones(0)

    def test_pink_is_deterministic(self):
        np.testing.assert_array_equal(gen_pink(1, 1024).samples, gen_pink(1, 1024).samples)
        assert not np.allclose(gen_pink(1, 1024).samples, gen_pink(2, 1024).samples)

    def test_pink_slope(self):
        sample_rate = 48000
        spectra = []
        for seed in range(16):
            noise = gen_pink(seed, 2**16, sample_rate).samples[0]
            frequencies, psd = welch(noise, sample_rate, nperseg=8192)
            spectra.append(psd)
        psd = np.mean(spectra, axis=0)

        edges = 40.0 * 2.0 ** np.arange(9)
        levels = [
            10 * np.log10(np.mean(psd[(frequencies >= low) & (frequencies < high)]))
            for low, high in zip(edges[:-1], edges[1:])
        ]
        slope = np.polyfit(np.arange(len(levels)), levels, 1)[0]

        assert slope == pytest.approx(-3.0, abs=0.75)


# ---------------------------------------------------------------------------
# Synthetic impulse responses
# ---------------------------------------------------------------------------


class TestSurrogates:
    def test_frontal_is_symmetric(self):
        ir = binaural_surrogate(0.0)
        assert ir.channels == 2
        assert ir.length == 2048
        np.testing.assert_array_equal(ir.samples[:, 0], [1.0, 1.0])

    def test_lateral_delay_is_half_period(self):
        ir = binaural_surrogate(90.0)
        assert ir.samples[1, 0] == 1.0
        assert ir.samples[0, 0] == 0.0
        assert ir.samples[0, 32] == pytest.approx(0.25)

    def test_left_source_delays_right_ear(self):
        ir = binaural_surrogate(-90.0)
        assert ir.samples[0, 0] == 1.0
        assert ir.samples[1, 32] == pytest.approx(0.25)

    def test_tails_do_not_depend_on_azimuth(self):
        frontal, lateral = binaural_surrogate(0.0), binaural_surrogate(90.0)
        np.testing.assert_array_equal(frontal.samples[1], lateral.samples[1])

    def test_seeded(self):
        a, b = binaural_surrogate(30.0, seed=3), binaural_surrogate(30.0, seed=3)
        np.testing.assert_array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, binaural_surrogate(30.0, seed=4).samples)

    def test_delay_must_fit(self):
        with pytest.raises(InvalidInputError, match="does not fit"):
            binaural_surrogate(90.0, length=16)

    def test_room_decays(self):
        ir = room_surrogate()
        assert (ir.channels, ir.length, ir.sample_rate) == (2, 32768, 44100)
        np.testing.assert_array_equal(ir.samples[:, 0], [1.0, 1.0])

        early = np.sqrt(np.mean(ir.samples[:, 1:1001] ** 2))
        late = np.sqrt(np.mean(ir.samples[:, -1000:] ** 2))
        assert late < 0.01 * early

    def test_room_seeds_differ(self):
        assert not np.array_equal(room_surrogate(seed=1).samples, room_surrogate(seed=2).samples)
