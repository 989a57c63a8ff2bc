"""Type utilities module."""

import numpy as np
import numpy.typing as npt

# Real-valued sample arrays (always 64-bit).
FloatArray = npt.NDArray[np.float64]

# Complex-valued spectrum arrays.
ComplexArray = npt.NDArray[np.complex128]


def is_power_of_two(n: int) -> bool:
    """
    Determine if an integer is a positive power of two.

    Args:
        n: Integer to check.

    Returns:
        True if n is 1, 2, 4, 8, ...
    """

    return n > 0 and (n & (n - 1)) == 0
