"""
WAV module.

Reads and writes RIFF/WAVE files with 16-bit or 24-bit PCM or 32-bit IEEE
float samples, 1 to 16 channels, including ``WAVE_FORMAT_EXTENSIBLE`` headers.
Integer samples are scaled to [-1, 1) by ``1 / 2**(bits - 1)``.
"""

from __future__ import annotations

import logging
import struct
from enum import Enum, IntEnum
from pathlib import Path

import numpy as np

from .buffer import AudioBuffer
from .errors import MalformedHeaderError, TruncatedDataError, UnsupportedCodecError

logger = logging.getLogger(__name__)

# Largest supported channel count.
MAX_CHANNELS = 16


class FormatTag(IntEnum):
    """Format tags of the fmt chunk."""

    PCM = 0x0001
    IEEE_FLOAT = 0x0003
    EXTENSIBLE = 0xFFFE


class WavFormat(Enum):
    """Sample formats supported for writing."""

    PCM16 = "pcm16"
    PCM24 = "pcm24"
    FLOAT32 = "float32"

    @property
    def tag(self) -> FormatTag:
        """Format tag of the samples."""

        return FormatTag.IEEE_FLOAT if self is WavFormat.FLOAT32 else FormatTag.PCM

    @property
    def bits(self) -> int:
        """Bits per sample."""

        return {WavFormat.PCM16: 16, WavFormat.PCM24: 24, WavFormat.FLOAT32: 32}[self]


# GUID tail shared by the KSDATAFORMAT_SUBTYPE_* identifiers.
_SUBTYPE_SUFFIX = b"\x00\x00\x00\x00\x10\x00\x80\x00\x00\xaa\x00\x38\x9b\x71"


def _read_chunk_header(data: bytes, offset: int) -> tuple[bytes, int]:
    if offset + 8 > len(data):
        raise TruncatedDataError("Chunk header runs past the end of the file", offset)

    return data[offset : offset + 4], struct.unpack_from("<I", data, offset + 4)[0]


def _parse_fmt(data: bytes, offset: int, size: int) -> tuple[int, int, int, int]:
    """Parse a fmt chunk body into (format tag, channels, sample rate, bits)."""

    if size < 16:
        raise MalformedHeaderError(f"fmt chunk of {size} bytes is too short", offset)

    tag, channels, rate, _, block_align, bits = struct.unpack_from("<HHIIHH", data, offset)

    if tag == FormatTag.EXTENSIBLE:
        if size < 40:
            raise MalformedHeaderError("Extensible fmt chunk is shorter than 40 bytes", offset)

        guid = data[offset + 24 : offset + 40]
        if guid[2:] != _SUBTYPE_SUFFIX:
            raise UnsupportedCodecError("Unknown extensible sub-format", offset + 24)
        tag = struct.unpack_from("<H", guid)[0]

    if (tag, bits) not in ((FormatTag.PCM, 16), (FormatTag.PCM, 24), (FormatTag.IEEE_FLOAT, 32)):
        raise UnsupportedCodecError(
            f"Format tag {tag:#06x} with {bits} bits is not supported", offset
        )

    if not 1 <= channels <= MAX_CHANNELS:
        raise UnsupportedCodecError(f"{channels} channels are not supported", offset + 2)

    if rate == 0:
        raise MalformedHeaderError("Sample rate is zero", offset + 4)

    if block_align != channels * bits // 8:
        raise MalformedHeaderError(
            f"Block alignment {block_align} does not match {channels} x {bits} bits",
            offset + 12,
        )

    return tag, channels, rate, bits


def _decode(raw: bytes, tag: int, bits: int) -> np.ndarray:
    if tag == FormatTag.IEEE_FLOAT:
        return np.frombuffer(raw, dtype="<f4").astype(np.float64)

    if bits == 16:
        return np.frombuffer(raw, dtype="<i2") / 2.0**15

    # Sign-extend little-endian 24-bit triplets.
    triplets = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
    values = triplets[:, 0] | (triplets[:, 1] << 8) | (triplets[:, 2] << 16)
    values = np.where(values >= 1 << 23, values - (1 << 24), values)
    return values / 2.0**23


def read_wav(path: str | Path) -> AudioBuffer:
    """
    Read a WAV file.

    Args:
        path: File to read.

    Raises:
        MalformedHeaderError: Raised if the RIFF/WAVE structure is broken.
        UnsupportedCodecError: Raised for sample formats other than PCM16,
            PCM24 and float32, or more than 16 channels.
        TruncatedDataError: Raised if the file ends before the declared data.

    Returns:
        The samples as 64-bit floats.
    """

    data = Path(path).read_bytes()

    if len(data) < 12:
        raise TruncatedDataError("File is shorter than a RIFF header", len(data))

    if data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedHeaderError("Not a RIFF/WAVE file", 0)

    fmt: tuple[int, int, int, int] | None = None
    offset = 12

    while offset < len(data):
        chunk_id, size = _read_chunk_header(data, offset)
        body = offset + 8

        if chunk_id == b"fmt ":
            if body + size > len(data):
                raise TruncatedDataError("fmt chunk runs past the end of the file", body)
            fmt = _parse_fmt(data, body, size)

        elif chunk_id == b"data":
            if fmt is None:
                raise MalformedHeaderError("data chunk precedes the fmt chunk", offset)

            tag, channels, rate, bits = fmt
            if body + size > len(data):
                raise TruncatedDataError(
                    f"data chunk declares {size} bytes, {len(data) - body} present", len(data)
                )

            frame_bytes = channels * bits // 8
            if size % frame_bytes:
                raise TruncatedDataError("data chunk ends inside a frame", body + size)

            samples = _decode(data[body : body + size], tag, bits)
            logger.debug(
                "Read %d frames x %d channels from %s.", size // frame_bytes, channels, path
            )
            return AudioBuffer(samples.reshape(-1, channels).T, rate)

        # Chunks are padded to an even size.
        offset = body + size + (size & 1)

    raise MalformedHeaderError("No data chunk found", len(data))


def _encode(samples: np.ndarray, wav_format: WavFormat) -> bytes:
    if wav_format is WavFormat.FLOAT32:
        return samples.astype("<f4").tobytes()

    bits = wav_format.bits
    scale = 2.0 ** (bits - 1)
    values = np.clip(np.round(samples * scale), -scale, scale - 1)

    if bits == 16:
        return values.astype("<i2").tobytes()

    # Keep the three low bytes of each little-endian 32-bit integer.
    return values.astype("<i4").view(np.uint8).reshape(-1, 4)[:, :3].tobytes()


def write_wav(
    path: str | Path, buffer: AudioBuffer, wav_format: WavFormat | str = WavFormat.FLOAT32
) -> Path:
    """
    Write a WAV file.

    Float32 output is exact for values representable in 32 bits; integer
    formats round to the nearest step and clip to the representable range.
    Files with more than two channels or 24-bit samples use the extensible
    header.

    Args:
        path: Destination file.
        buffer: Samples to write.
        wav_format: Sample format. Defaults to float32.

    Raises:
        UnsupportedCodecError: Raised for more than 16 channels.

    Returns:
        The written path.
    """

    wav_format = WavFormat(wav_format)
    path = Path(path)
    channels, bits = buffer.channels, wav_format.bits

    if channels > MAX_CHANNELS:
        raise UnsupportedCodecError(f"{channels} channels are not supported", 0)

    block_align = channels * bits // 8
    payload = _encode(buffer.samples.T.reshape(-1), wav_format)

    header = struct.pack(
        "<HHIIHH",
        FormatTag.EXTENSIBLE if channels > 2 or bits == 24 else wav_format.tag,
        channels,
        buffer.sample_rate,
        buffer.sample_rate * block_align,
        block_align,
        bits,
    )
    if channels > 2 or bits == 24:
        # cbSize, valid bits, channel mask (unspecified) and sub-format GUID.
        header += struct.pack("<HHI", 22, bits, 0)
        header += struct.pack("<H", wav_format.tag) + _SUBTYPE_SUFFIX
    elif wav_format is WavFormat.FLOAT32:
        header += struct.pack("<H", 0)

    chunks = b"fmt " + struct.pack("<I", len(header)) + header
    if wav_format is WavFormat.FLOAT32:
        chunks += b"fact" + struct.pack("<II", 4, buffer.frames)
    chunks += b"data" + struct.pack("<I", len(payload)) + payload
    if len(payload) & 1:
        chunks += b"\x00"

    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(b"RIFF" + struct.pack("<I", 4 + len(chunks)) + b"WAVE" + chunks)

    logger.info("Wrote %s (%s, %d channels).", path, wav_format.value, channels)

    return path
