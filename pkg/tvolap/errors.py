"""Errors module."""


class TvolapError(Exception):
    """Base class for every error raised by the package."""


class InvalidSizeError(TvolapError, ValueError):
    """A length, hop size or transform size is not supported."""


class InvalidSpectrumError(TvolapError, ValueError):
    """A spectrum frame violates the real-transform symmetry."""


class InvalidInputError(TvolapError, ValueError):
    """An input buffer or impulse response is empty or mis-shaped."""


class InvalidFrequencyError(InvalidInputError):
    """A generator frequency would alias."""


class IncompatibleFilterError(TvolapError, ValueError):
    """A replacement filter does not match the configured processor."""


class SwitchInProgressError(TvolapError, RuntimeError):
    """A filter switch was requested while a crossfade is still running."""


class InvalidConfigurationError(TvolapError, ValueError):
    """Parameters of a cost query or an experiment are inconsistent."""


class WavError(TvolapError):
    """
    Base class for WAV parse errors.

    Every WAV error names the byte offset at which parsing failed.
    """

    def __init__(self, message: str, offset: int) -> None:
        """
        Initialize the error.

        Args:
            message: Description of the failure.
            offset: Byte offset into the file where the failure was detected.
        """

        super().__init__(f"{message} (at byte offset {offset})")

        # Byte offset of the failure.
        self.offset = offset


class MalformedHeaderError(WavError):
    """The RIFF/WAVE structure is not compliant."""


class UnsupportedCodecError(WavError):
    """The file uses a sample format other than PCM16, PCM24 or float32."""


class TruncatedDataError(WavError):
    """The file ends before the declared data."""
