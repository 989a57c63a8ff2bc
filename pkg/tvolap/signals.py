"""
Signals module.

Deterministic test signals and synthetic impulse responses.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .buffer import AudioBuffer, ImpulseResponse
from .errors import InvalidFrequencyError, InvalidInputError

# Pole-zero cascade approximating a -3 dB/octave slope within about 0.3 dB
# from 10 Hz to 20 kHz (Kellet/Smith design for 44.1 kHz, also used at 48 kHz).
PINK_B = np.array([0.049922035, -0.095993537, 0.050612699, -0.004408786])
PINK_A = np.array([1.0, -2.494956002, 2.017265875, -0.522189400])

# Samples of filter settling discarded before the returned pink noise.
PINK_WARMUP = 4096

# Frequency whose half period sets the largest interaural delay of the surrogates.
INTERAURAL_REFERENCE_FREQUENCY = 750.0


def _check_frames(n: int) -> None:
    if n < 1:
        raise InvalidInputError(f"Signal length must be at least 1, got {n}.")


def gen_ones(n: int, sample_rate: int = 48000) -> AudioBuffer:
    """
    A constant sequence of ones.

    Args:
        n: Number of samples.
        sample_rate: Sample rate in Hz. Defaults to 48000.

    Returns:
        Mono buffer of ones.
    """

    _check_frames(n)
    return AudioBuffer(np.ones(n), sample_rate)


def gen_sine(
    freq: float, n: int, sample_rate: int = 48000, amplitude: float = 1.0
) -> AudioBuffer:
    """
    A sine starting at phase zero.

    Args:
        freq: Frequency in Hz.
        n: Number of samples.
        sample_rate: Sample rate in Hz. Defaults to 48000.
        amplitude: Peak amplitude. Defaults to 1.0.

    Raises:
        InvalidFrequencyError: Raised if the frequency is negative or not
            below the Nyquist frequency.

    Returns:
        Mono buffer ``amplitude * sin(2 pi freq n / sample_rate)``.
    """

    _check_frames(n)
    if not 0.0 <= freq < sample_rate / 2:
        raise InvalidFrequencyError(
            f"Frequency {freq} Hz is outside [0, {sample_rate / 2}) Hz."
        )

    return AudioBuffer(
        amplitude * np.sin(2.0 * np.pi * freq * np.arange(n) / sample_rate), sample_rate
    )


def gen_pink(seed: int, n: int, sample_rate: int = 48000) -> AudioBuffer:
    """
    Pink noise: seeded uniform white noise shaped by :data:`PINK_B` / :data:`PINK_A`.

    Args:
        seed: Seed of the uniform generator.
        n: Number of samples.
        sample_rate: Sample rate in Hz. Defaults to 48000.

    Returns:
        Mono buffer of pink noise.
    """

    _check_frames(n)
    white = np.random.default_rng(seed).uniform(-1.0, 1.0, n + PINK_WARMUP)
    return AudioBuffer(lfilter(PINK_B, PINK_A, white)[PINK_WARMUP:], sample_rate)


def _decaying_noise(
    rng: np.random.Generator, length: int, level: float, decay: float
) -> np.ndarray:
    return level * rng.standard_normal(length) * np.exp(-np.arange(length) / decay)


def binaural_surrogate(
    azimuth: float,
    length: int = 2048,
    sample_rate: int = 48000,
    seed: int = 0,
    tail_level: float = 0.05,
    tail_decay: float = 24.0,
) -> ImpulseResponse:
    """
    Two-channel (left, right) impulse response standing in for a measured HRIR.

    The ear facing the source receives a unit impulse at lag 0. The other ear
    receives the impulse later by ``|sin(azimuth)|`` times half a period of
    750 Hz and attenuated by up to 12 dB, so a 750 Hz tone arrives in opposite
    phase at 90 degrees. Each ear adds a short decaying noise tail after its
    direct impulse; the tails depend on the seed only, not on the azimuth.

    Args:
        azimuth: Source direction in degrees, positive towards the right ear.
        length: Impulse response length. Defaults to 2048.
        sample_rate: Sample rate in Hz. Defaults to 48000.
        seed: Seed of the tails. Defaults to 0.
        tail_level: Initial tail amplitude. Defaults to 0.05.
        tail_decay: Tail decay constant in samples. Defaults to 24.

    Raises:
        InvalidInputError: Raised if the interaural delay does not fit.

    Returns:
        The impulse response, channel 0 left and channel 1 right.
    """

    lateral = np.sin(np.deg2rad(azimuth))
    lag = int(round(abs(lateral) * sample_rate / (2 * INTERAURAL_REFERENCE_FREQUENCY)))
    if lag >= length:
        raise InvalidInputError(f"Interaural delay {lag} does not fit {length} samples.")

    rng = np.random.default_rng(seed)
    samples = np.zeros((2, length))
    far = 0 if lateral > 0 else 1

    for ear in range(2):
        # Direct sound, delayed and attenuated at the far ear.
        delay, gain = (lag, 1.0 - 0.75 * abs(lateral)) if ear == far else (0, 1.0)
        samples[ear, delay] = gain

        # Tail after the direct sound.
        tail = _decaying_noise(rng, length, tail_level, tail_decay)
        samples[ear, delay + 1 :] += gain * tail[: length - delay - 1]

    return ImpulseResponse(samples, sample_rate)


def room_surrogate(
    length: int = 32768,
    sample_rate: int = 44100,
    channels: int = 2,
    seed: int = 0,
    rt60: float = 0.65,
) -> ImpulseResponse:
    """
    Long room impulse response: a direct impulse followed by exponentially
    decaying noise reaching -60 dB after ``rt60`` seconds.

    Args:
        length: Impulse response length. Defaults to 32768.
        sample_rate: Sample rate in Hz. Defaults to 44100.
        channels: Number of channels. Defaults to 2.
        seed: Seed of the noise. Defaults to 0.
        rt60: Reverberation time in seconds. Defaults to 0.65.

    Returns:
        The impulse response.
    """

    rng = np.random.default_rng(seed)
    decay = rt60 * sample_rate / np.log(1000.0)

    samples = np.stack(
        [_decaying_noise(rng, length, 0.1, decay) for _ in range(channels)]
    )
    samples[:, 0] = 1.0

    return ImpulseResponse(samples, sample_rate)
