"""
Spectral kernel module.

Real-input forward/inverse discrete Fourier transforms for power-of-two
lengths, built on an iterative radix-2 decimation-in-time complex transform of
half the length, plus the complex multiply-accumulate used by the partitioned
convolution engine.

The forward transform is unscaled with the kernel ``exp(-j 2 pi n k / N)``;
the inverse carries the ``1/N`` factor so that ``inverse(forward(x)) == x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidSizeError, InvalidSpectrumError
from .typeutils import ComplexArray, FloatArray, is_power_of_two

# Smallest supported real transform length.
MIN_TRANSFORM_LENGTH = 8

# DC/Nyquist bins may carry this much imaginary residue (relative to the peak bin).
_SYMMETRY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class _ComplexPlan:
    """Precomputed bit-reversal order and per-stage twiddles for one size."""

    size: int
    permutation: np.ndarray
    twiddles: tuple[ComplexArray, ...]


@dataclass(frozen=True)
class _RealPlan:
    """Half-size complex plan plus the split twiddles of a real transform."""

    length: int
    half: _ComplexPlan
    split: ComplexArray


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _bit_reversal(size: int) -> np.ndarray:
    bits = size.bit_length() - 1
    index = np.arange(size)
    reversed_index = np.zeros(size, dtype=np.intp)
    for bit in range(bits):
        reversed_index |= ((index >> bit) & 1) << (bits - 1 - bit)
    return reversed_index


@lru_cache(maxsize=None)
def _complex_plan(size: int) -> _ComplexPlan:
    twiddles = []
    span = 2
    while span <= size:
        half = span // 2
        twiddles.append(_readonly(np.exp(-2j * np.pi * np.arange(half) / span)))
        span <<= 1

    return _ComplexPlan(size, _readonly(_bit_reversal(size)), tuple(twiddles))


@lru_cache(maxsize=None)
def _real_plan(length: int) -> _RealPlan:
    half = length // 2
    split = np.exp(-2j * np.pi * np.arange(half + 1) / length)

    # Exact values at the quarter points keep DC and Nyquist bins purely real.
    split[0] = 1.0
    split[half] = -1.0
    if half % 2 == 0:
        split[half // 2] = -1j

    return _RealPlan(length, _complex_plan(half), _readonly(split))


def _check_length(length: int) -> None:
    if length < MIN_TRANSFORM_LENGTH or not is_power_of_two(length):
        raise InvalidSizeError(
            f"Transform length must be a power of two >= {MIN_TRANSFORM_LENGTH}, got {length}."
        )


def _complex_transform(values: ComplexArray, plan: _ComplexPlan) -> ComplexArray:
    """Radix-2 decimation-in-time transform along the last axis."""

    lead = values.shape[:-1]
    size = plan.size

    # Bit-reverse the input order.
    data = values[..., plan.permutation]

    # Combine pairs of half-size transforms, one stage per twiddle table.
    span = 2
    for twiddle in plan.twiddles:
        half = span // 2
        groups = data.reshape(*lead, size // span, span)
        even = groups[..., :half]
        odd = groups[..., half:] * twiddle
        data = np.concatenate((even + odd, even - odd), axis=-1).reshape(*lead, size)
        span <<= 1

    return data


def rfft(block: FloatArray) -> ComplexArray:
    """
    Real-input forward transform along the last axis.

    Args:
        block: Real samples, last axis of power-of-two length N >= 8.

    Raises:
        InvalidSizeError: Raised if N is not a supported length.

    Returns:
        The N/2 + 1 non-redundant bins.
    """

    block = np.asarray(block, dtype=np.float64)
    length = block.shape[-1]
    _check_length(length)
    plan = _real_plan(length)
    half = length // 2

    # Pack even/odd samples into one complex sequence of half the length.
    packed = _complex_transform(block[..., 0::2] + 1j * block[..., 1::2], plan.half)

    # Untangle the even and odd spectra (Z[half] wraps to Z[0]).
    extended = np.concatenate((packed, packed[..., :1]), axis=-1)
    mirrored = np.conj(extended[..., ::-1])
    even = 0.5 * (extended + mirrored)
    odd = -0.5j * (extended - mirrored)

    bins = even + plan.split * odd
    bins[..., 0] = bins[..., 0].real
    bins[..., half] = bins[..., half].real
    return bins


def irfft(bins: ComplexArray) -> FloatArray:
    """
    Inverse of :func:`rfft` including the 1/N scaling.

    Args:
        bins: N/2 + 1 non-redundant bins along the last axis.

    Raises:
        InvalidSizeError: Raised if the implied length is not supported.
        InvalidSpectrumError: Raised if the DC or Nyquist bin is not real.

    Returns:
        Real samples of length N along the last axis.
    """

    bins = np.asarray(bins, dtype=np.complex128)
    half = bins.shape[-1] - 1
    length = 2 * half
    _check_length(length)
    plan = _real_plan(length)

    # DC and Nyquist must be real for a real-valued signal.
    scale = max(1.0, float(np.max(np.abs(bins), initial=0.0)))
    edges = np.abs(bins[..., [0, half]].imag)
    if np.any(edges > _SYMMETRY_TOLERANCE * scale):
        raise InvalidSpectrumError("DC and Nyquist bins must have zero imaginary part.")

    bins = bins.copy()
    bins[..., 0] = bins[..., 0].real
    bins[..., half] = bins[..., half].real

    # Rebuild the packed half-length spectrum.
    mirrored = np.conj(bins[..., ::-1])
    even = 0.5 * (bins + mirrored)[..., :half]
    odd = 0.5 * ((bins - mirrored) * np.conj(plan.split))[..., :half]
    packed = even + 1j * odd

    # Inverse through the forward transform of the conjugate.
    unpacked = np.conj(_complex_transform(np.conj(packed), plan.half)) / half

    block = np.empty((*bins.shape[:-1], length), dtype=np.float64)
    block[..., 0::2] = unpacked.real
    block[..., 1::2] = unpacked.imag
    return block


def mac_into(acc: ComplexArray, a: ComplexArray, b: ComplexArray) -> None:
    """Accumulate ``a * b`` into ``acc`` in place."""

    acc += a * b


@dataclass(frozen=True, eq=False)
class SpectrumFrame:
    """
    The non-redundant bins of a real transform of length ``transform_length``.

    Bin 0 (DC) and bin ``transform_length / 2`` (Nyquist) are real; this is
    checked when the frame is inverted.
    """

    # Complex bins, index k = 0 .. transform_length / 2.
    bins: ComplexArray
    # Length of the underlying real transform (a power of two).
    transform_length: int

    def __post_init__(self) -> None:
        _check_length(self.transform_length)

        bins = np.array(self.bins, dtype=np.complex128)
        if bins.shape != (self.transform_length // 2 + 1,):
            raise InvalidSpectrumError(
                f"Expected {self.transform_length // 2 + 1} bins, got shape {bins.shape}."
            )
        object.__setattr__(self, "bins", _readonly(bins))

    @classmethod
    def zeros(cls, transform_length: int) -> SpectrumFrame:
        """
        Create an all-zero frame.

        Args:
            transform_length: Length of the real transform.

        Returns:
            Frame with every bin equal to zero.
        """

        return cls(np.zeros(transform_length // 2 + 1, dtype=np.complex128), transform_length)

    def __len__(self) -> int:
        return self.bins.shape[0]


def forward_real(block: FloatArray) -> SpectrumFrame:
    """
    Transform one real block into a spectrum frame.

    Args:
        block: Real samples of power-of-two length >= 8.

    Raises:
        InvalidSizeError: Raised if the block length is not supported.

    Returns:
        Spectrum frame of the block.
    """

    block = np.asarray(block, dtype=np.float64)
    if block.ndim != 1:
        raise InvalidSizeError(f"Expected a one-dimensional block, got shape {block.shape}.")

    return SpectrumFrame(rfft(block), block.shape[0])


def inverse_real(spec: SpectrumFrame) -> FloatArray:
    """
    Transform a spectrum frame back into real samples.

    Args:
        spec: Frame to invert.

    Raises:
        InvalidSpectrumError: Raised if the DC or Nyquist bin is not real.

    Returns:
        Real block of length ``spec.transform_length``.
    """

    return irfft(spec.bins)


def mac(acc: SpectrumFrame, a: SpectrumFrame, b: SpectrumFrame) -> SpectrumFrame:
    """
    Bin-wise complex multiply-accumulate ``acc + a * b``.

    Args:
        acc: Accumulator frame.
        a: First factor.
        b: Second factor.

    Raises:
        InvalidSizeError: Raised if the frames differ in transform length.

    Returns:
        New frame holding the accumulated bins.
    """

    if not acc.transform_length == a.transform_length == b.transform_length:
        raise InvalidSizeError(
            "Frames must share a transform length, got "
            f"{acc.transform_length}, {a.transform_length} and {b.transform_length}."
        )

    bins = acc.bins.copy()
    mac_into(bins, a.bins, b.bins)
    return SpectrumFrame(bins, acc.transform_length)
