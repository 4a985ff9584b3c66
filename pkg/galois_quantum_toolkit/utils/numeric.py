import math
from typing import Iterable

import numpy as np


def complex_fsum(values: Iterable[complex]) -> complex:
    """Compensated summation of complex values (real and imaginary parts separately)."""
    array = np.asarray(list(values), dtype=np.complex128)
    if array.size == 0:
        return 0j
    return complex(math.fsum(array.real.tolist()), math.fsum(array.imag.tolist()))


def roots_of_unity(n: int) -> np.ndarray:
    """Array whose k-th entry is exp(2*pi*i*k/n), for k in [0, n)."""
    return np.exp(2j * np.pi * np.arange(n) / n)


def phase_power(base: int, exponents: np.ndarray | int) -> np.ndarray:
    """exp(2*pi*i*e/base), with exponents reduced mod base before exponentiation."""
    reduced = np.mod(np.asarray(exponents, dtype=np.int64), base)
    return roots_of_unity(base)[reduced]
