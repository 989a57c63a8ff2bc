from .application import room_brir
from .comparison import pink_hrir
from .switching import polarity_flip, sine_hrir

# Presets selectable from the command line.
PRESETS = {
    "polarity-flip": polarity_flip,
    "sine-hrir": sine_hrir,
    "pink-hrir": pink_hrir,
    "room-brir": room_brir,
}

__all__ = ["PRESETS", "polarity_flip", "sine_hrir", "pink_hrir", "room_brir"]
