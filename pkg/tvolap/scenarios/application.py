"""Long binaural room impulse responses."""

from ..experiment import ExperimentSpec, InputSource

# Block size 2L and the number of blocks before the switch.
ROOM_BLOCK = 1024
ROOM_SWITCH_BLOCKS = 32


def room_brir(sample_rate: int = 44100) -> ExperimentSpec:
    """
    Pink noise through a synthetic two-channel room response of 32768 samples,
    exchanged for another after 32 blocks of 1024 samples (M = 32).

    Args:
        sample_rate: Sample rate in Hz. Defaults to 44100.

    Returns:
        The scenario.
    """

    switch_samples = ROOM_SWITCH_BLOCKS * ROOM_BLOCK

    return ExperimentSpec(
        algorithms=("tvolap",),
        source=InputSource(InputSource.Kind.PINK, seed=1),
        filter_a="room:1",
        filter_b="room:2",
        switch_time=1000.0 * switch_samples / sample_rate,
        block=ROOM_BLOCK,
        ir_length=32768,
        sample_rate=sample_rate,
        duration=1000.0 * (2 * switch_samples + ROOM_BLOCK) / sample_rate,
        name="room-brir",
    )
