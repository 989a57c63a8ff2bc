"""Switching scenarios of the block convolution algorithms."""

from ..experiment import ExperimentSpec, InputSource


def polarity_flip() -> ExperimentSpec:
    """
    A sequence of ones convolved with a delta impulse whose polarity flips.

    OLA and OLS switch rectangularly, WOLA with a Hann half of N_IR / 2 = 1024
    samples and TVOLAP (M = 4) with one of L = 256 samples.

    Returns:
        The scenario.
    """

    return ExperimentSpec(
        algorithms=("ola", "ols", "wola", "tvolap"),
        source=InputSource(InputSource.Kind.ONES),
        filter_a="+delta",
        filter_b="-delta",
        switch_time=64.0,
        block=512,
        ir_length=2048,
        sample_rate=48000,
        duration=160.0,
        name="polarity-flip",
    )


def sine_hrir() -> ExperimentSpec:
    """
    A 750 Hz sine through a binaural filter switched from 0 to 90 degrees
    azimuth at 3 ms. The 90 degree surrogate delays the far ear by half a
    period, so the far-ear output flips its phase.

    Returns:
        The scenario.
    """

    return ExperimentSpec(
        algorithms=("ola", "ols", "wola", "tvolap"),
        source=InputSource(InputSource.Kind.SINE, frequency=750.0),
        filter_a="binaural:0",
        filter_b="binaural:90",
        switch_time=3.0,
        block=512,
        ir_length=2048,
        sample_rate=48000,
        duration=100.0,
        name="sine-hrir",
    )
