"""QPSK modulation, linear ZF/MMSE filtering, and bit-error accounting.

The receiver chain is filter-then-decide: the received vector is multiplied
by a filtering matrix and each output entry is hard-sliced to the nearest
QPSK constellation point.  Bits map Gray-coded and independently per axis,
pair ``(b_I, b_Q)`` to ``((1 - 2 b_I) + 1j (1 - 2 b_Q)) / sqrt(2)``, so
symbols have unit energy.  Slicer ties (an exactly zero real or imaginary
part) decide bit 0 for determinism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .channel import NoiseModel
from .exceptions import DimensionError

_SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class FilterMatrix:
    """A linear receive filter plus the criterion that produced it.

    ``kind`` is ``"zf"`` or ``"mmse"``; ``noise_variance`` records the
    variance used to build the filter (0 for ZF).
    """

    kind: str
    noise_variance: float
    matrix: np.ndarray


def as_bit_block(bits, name="bits") -> np.ndarray:
    """Coerce to a 1-D integer array of 0/1 values."""
    b = np.asarray(bits)
    if b.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got ndim={b.ndim}")
    ib = b.astype(np.int64)
    if b.size and (not np.array_equal(ib, b) or not np.all((ib == 0) | (ib == 1))):
        raise ValueError(f"{name} must contain only 0s and 1s")
    return ib


def qpsk_modulate(bits) -> np.ndarray:
    """Map a bit block to unit-energy QPSK symbols, two bits per symbol."""
    b = as_bit_block(bits)
    if b.size % 2 != 0:
        raise DimensionError(f"bit count must be even, got {b.size}")
    pairs = b.reshape(-1, 2)
    return ((1 - 2 * pairs[:, 0]) + 1j * (1 - 2 * pairs[:, 1])) * _SQRT_HALF


def qpsk_slice(y) -> np.ndarray:
    """Hard-decide QPSK bits from filtered symbols: sign of Re then Im.

    Exact inverse of :func:`qpsk_modulate` on noiseless constellation
    points; a zero real or imaginary part decides bit 0.
    """
    v = linalg.as_complex_vector(y, name="filter output")
    bits = np.empty((v.size, 2), dtype=np.int64)
    bits[:, 0] = v.real < 0.0
    bits[:, 1] = v.imag < 0.0
    return bits.reshape(-1)


def zf_filter(h) -> FilterMatrix:
    """Zero-forcing filter ``(H^H H)^{-1} H^H``.

    Inverts the channel exactly (``W H = I``) at the cost of noise
    amplification by the inverse singular values.  Numerically singular
    channels raise :class:`~lindet.exceptions.SingularMatrixError`.
    """
    m = linalg.as_complex_matrix(h, name="channel")
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"channel must be square, got shape {m.shape}")
    sigma = linalg.gram(m)
    w = linalg.inverse(sigma) @ m.conj().T
    return FilterMatrix(kind="zf", noise_variance=0.0, matrix=w)


def mmse_filter(h, noise: NoiseModel) -> FilterMatrix:
    """MMSE filter ``(H^H H + variance I)^{-1} H^H``.

    Regularizes the Gram matrix with the noise variance; at zero variance
    it coincides with :func:`zf_filter`.
    """
    m = linalg.as_complex_matrix(h, name="channel")
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"channel must be square, got shape {m.shape}")
    n = m.shape[0]
    gamma = linalg.gram(m) + noise.variance * np.eye(n)
    w = linalg.inverse(gamma) @ m.conj().T
    return FilterMatrix(kind="mmse", noise_variance=noise.variance, matrix=w)


def equalize_and_slice(w: FilterMatrix, r) -> np.ndarray:
    """Apply a receive filter and hard-slice the result to bits."""
    rv = linalg.as_complex_vector(r, name="received vector")
    if w.matrix.shape[1] != rv.shape[0]:
        raise DimensionError(
            f"filter expects length {w.matrix.shape[1]}, received vector has "
            f"length {rv.shape[0]}"
        )
    return qpsk_slice(w.matrix @ rv)


def count_bit_errors(sent, received) -> int:
    """Hamming distance between two equal-length bit blocks."""
    a = as_bit_block(sent, name="sent bits")
    b = as_bit_block(received, name="received bits")
    if a.size != b.size:
        raise DimensionError(
            f"bit blocks differ in length: {a.size} vs {b.size}"
        )
    return int(np.count_nonzero(a != b))
