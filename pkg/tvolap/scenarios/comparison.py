"""TVOLAP against crossfaded time-domain convolution."""

from ..experiment import ExperimentSpec, InputSource


def pink_hrir() -> ExperimentSpec:
    """
    Pink noise through a binaural filter switched from 0 to 90 degrees
    azimuth at 7 ms, rendered by TVOLAP and by CF-TDC with a Hann and a
    linear crossfade of L samples.

    Returns:
        The scenario.
    """

    return ExperimentSpec(
        algorithms=("tvolap", "cf-tdc", "cf-tdc:linear"),
        source=InputSource(InputSource.Kind.PINK, seed=1),
        filter_a="binaural:0",
        filter_b="binaural:90",
        switch_time=7.0,
        block=512,
        ir_length=2048,
        sample_rate=48000,
        duration=100.0,
        name="pink-hrir",
    )
