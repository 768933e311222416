"""Closed-form conditioning and post-processing SNR analysis.

This module collects the analytical machinery for comparing linear ZF and
MMSE detection on a known channel spectrum:

* Weyl-type lower bounds on the singular values of a sum of Hermitian PSD
  matrices, and the resulting approximation of the MMSE/ZF filtering-matrix
  condition-number ratio ``(1 + v/s_1^2) / (1 + v/s_N^2)`` where ``v`` is
  the noise variance and ``s_1 >= s_N`` the extreme channel singular
  values.
* Exact condition-number ratios obtained by building both filters and
  taking SVDs.
* Post-processing SNR of the ZF filter, ``N / sum_i(v / s_i^2)``, and of
  the MMSE filter, ``(a + b) / (v (N + 1) c + N b - a)`` with the spectral
  sums ``a``, ``b``, ``c`` defined in :func:`mmse_abc`.
* A Monte Carlo distortion-SNR oracle that measures transmit energy over
  filtered-error energy directly, independent of the closed forms.

Infinite SNR is a first-class value (``math.inf``), not an exception: the
zero-noise limits are analytically meaningful and both detectors diverge
together there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .channel import NoiseModel, RngStream
from .detection import FilterMatrix, mmse_filter, zf_filter
from .exceptions import DimensionError, FormulaDomainError, SingularMatrixError

#: Relative magnitude below which the MMSE SNR denominator is treated as the
#: exact zero-noise cancellation and mapped to the infinite marker.
MMSE_DENOMINATOR_RTOL = 1e-12

_MC_BLOCK = 8192


@dataclass(frozen=True)
class MmseAbc:
    """Spectral sums entering the MMSE post-processing SNR.

    With ``t_i = s_i^2 / (s_i^2 + v)``:  ``a = (sum t_i)^2``,
    ``b = sum t_i^2``, ``c = sum s_i^2 / (s_i^2 + v)^2``.  Cauchy-Schwarz
    gives ``a >= b`` whenever the values are finite.
    """

    a: float
    b: float
    c: float


@dataclass(frozen=True)
class CondRatioReport:
    """Exact and approximate MMSE/ZF filtering-matrix conditioning ratio."""

    exact_ratio: float
    approx_ratio: float
    cond_w_zf: float
    cond_w_mmse: float


def weyl_lower_bound(i: int, sigma_spectrum, delta_spectrum) -> float:
    """Sharpest Weyl lower bound on the i-th singular value of a PSD sum.

    For Hermitian PSD matrices with descending spectra ``sigma_spectrum``
    and ``delta_spectrum``, the i-th (1-indexed) singular value of their sum
    is at least ``sigma[i+k] + delta[N-k]`` for every ``k`` in
    ``0..N-i``; this returns the maximum of that family.
    """
    sig = linalg.as_spectrum(sigma_spectrum, name="sigma_spectrum")
    dlt = linalg.as_spectrum(delta_spectrum, name="delta_spectrum")
    n = sig.size
    if dlt.size != n:
        raise DimensionError(
            f"spectra must have equal length, got {n} and {dlt.size}"
        )
    if not 1 <= i <= n:
        raise IndexError(f"index must be in 1..{n}, got {i}")
    # k-th family member pairs sigma[i-1+k] with delta[n-1-k], k = 0..n-i.
    candidates = sig[i - 1:] + dlt[::-1][: n - i + 1]
    return float(np.max(candidates))


def cond_ratio_approx(sigma_1: float, sigma_n: float, noise: NoiseModel) -> float:
    """Approximate cond(W_mmse)/cond(W_zf) from the extreme channel singular values.

    Returns ``(1 + v/sigma_1^2) / (1 + v/sigma_n^2)``, which is always in
    ``(0, 1]`` and equals 1 exactly when the noise vanishes or the channel
    is orthogonal (``sigma_1 == sigma_n``).
    """
    s1 = float(sigma_1)
    sn = float(sigma_n)
    if sn <= 0.0:
        raise SingularMatrixError(
            "smallest singular value must be positive", sigma_min=sn, sigma_max=s1
        )
    if not (math.isfinite(s1) and math.isfinite(sn)) or s1 < sn:
        raise ValueError(f"need finite sigma_1 >= sigma_n > 0, got ({sigma_1!r}, {sigma_n!r})")
    v = noise.variance
    return (1.0 + v / (s1 * s1)) / (1.0 + v / (sn * sn))


def cond_ratio_exact(h, noise: NoiseModel) -> CondRatioReport:
    """Exact cond(W_mmse)/cond(W_zf) for a channel, with the approximation alongside.

    Builds both filtering matrices, measures their condition numbers by SVD,
    and fills in :func:`cond_ratio_approx` evaluated at the channel's
    extreme singular values.
    """
    m = linalg.as_complex_matrix(h, name="channel")
    w_zf = zf_filter(m)
    w_mmse = mmse_filter(m, noise)
    cond_zf = linalg.condition_number(w_zf.matrix)
    cond_mmse = linalg.condition_number(w_mmse.matrix)
    s = linalg.singular_values(m)
    approx = cond_ratio_approx(float(s[0]), float(s[-1]), noise)
    return CondRatioReport(
        exact_ratio=cond_mmse / cond_zf,
        approx_ratio=approx,
        cond_w_zf=cond_zf,
        cond_w_mmse=cond_mmse,
    )


def snr_zf(spectrum, noise: NoiseModel) -> float:
    """Post-processing SNR of the ZF filter: ``N / sum_i(v / s_i^2)``.

    Returns ``math.inf`` for zero noise.  A zero singular value raises
    :class:`~lindet.exceptions.SingularMatrixError` since ZF inverts the
    channel.
    """
    s = linalg.as_spectrum(spectrum)
    if s[-1] <= 0.0:
        raise SingularMatrixError(
            "ZF SNR undefined for a singular channel",
            sigma_min=float(s[-1]),
            sigma_max=float(s[0]),
        )
    v = noise.variance
    if v == 0.0:
        return math.inf
    return s.size / float(np.sum(v / (s * s)))


def mmse_abc(spectrum, noise: NoiseModel) -> MmseAbc:
    """Spectral sums ``a``, ``b``, ``c`` for the MMSE post-processing SNR."""
    s = linalg.as_spectrum(spectrum)
    v = noise.variance
    s2 = s * s
    denom = s2 + v
    if np.any(denom == 0.0):
        raise SingularMatrixError(
            "zero singular value with zero noise variance",
            sigma_min=float(s[-1]),
            sigma_max=float(s[0]),
        )
    t = s2 / denom
    a = float(np.sum(t)) ** 2
    b = float(np.sum(t * t))
    c = float(np.sum(s2 / (denom * denom)))
    return MmseAbc(a=a, b=b, c=c)


def snr_mmse(spectrum, noise: NoiseModel) -> float:
    """Post-processing SNR of the MMSE filter.

    Evaluates ``(a + b) / (v (N + 1) c + N b - a)`` exactly as written.
    The denominator cancels to zero in the zero-noise limit (where the MMSE
    and ZF SNRs both diverge); denominators at or below
    ``MMSE_DENOMINATOR_RTOL * (a + b)`` map to ``math.inf``.  A negative
    denominator beyond that tolerance is a domain violation and raises
    :class:`~lindet.exceptions.FormulaDomainError` rather than being
    clamped.
    """
    s = linalg.as_spectrum(spectrum)
    n = s.size
    abc = mmse_abc(s, noise)
    v = noise.variance
    numerator = abc.a + abc.b
    denominator = v * (n + 1) * abc.c + n * abc.b - abc.a
    tol = MMSE_DENOMINATOR_RTOL * numerator
    if denominator < -tol:
        raise FormulaDomainError(
            f"MMSE SNR denominator is negative ({denominator:.6e}); "
            "inputs are outside the formula's domain"
        )
    if denominator <= tol:
        return math.inf
    return numerator / denominator


def gain_db(snr_mmse_lin: float, snr_zf_lin: float) -> float:
    """MMSE-over-ZF gain in dB: ``10 log10(snr_mmse / snr_zf)``.

    Infinite markers propagate: if both inputs are infinite the gain is the
    zero-noise limit 0 dB; a single infinite input yields ``+/-inf``.
    """
    m = float(snr_mmse_lin)
    z = float(snr_zf_lin)
    if math.isinf(m) and math.isinf(z):
        return 0.0
    if math.isinf(m):
        return math.inf
    if math.isinf(z):
        return -math.inf
    if not (m > 0.0 and z > 0.0) or math.isnan(m) or math.isnan(z):
        raise ValueError(f"SNRs must be positive, got ({snr_mmse_lin!r}, {snr_zf_lin!r})")
    return 10.0 * math.log10(m / z)


def edelman_tail(x: float) -> float:
    """Asymptotic minimum-singular-value tail law ``exp(-x - x^2/2)``."""
    xv = float(x)
    if not math.isfinite(xv) or xv < 0.0:
        raise ValueError(f"x must be finite and >= 0, got {x!r}")
    return math.exp(-xv - 0.5 * xv * xv)


def empirical_distortion_snr(
    h,
    w: FilterMatrix,
    noise: NoiseModel,
    trials: int,
    rng: RngStream,
) -> float:
    """Monte Carlo distortion SNR: transmit energy over filtered-error energy.

    Draws random QPSK vectors ``x`` and noise ``n``, pushes them through the
    channel and the given filter, and returns
    ``sum ||x||^2 / sum ||W (H x + n) - x||^2`` over all trials.  This is an
    oracle independent of the closed-form SNR expressions.  Zero accumulated
    distortion (noiseless ZF) returns ``math.inf``.

    Accumulation is blockwise with a fixed block size and an exact final
    summation, so results are reproducible regardless of how callers shard
    trials across workers.
    """
    m = linalg.as_complex_matrix(h, name="channel")
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"channel must be square, got shape {m.shape}")
    if w.matrix.shape[1] != m.shape[0]:
        raise DimensionError(
            f"filter expects length {w.matrix.shape[1]}, channel outputs "
            f"length {m.shape[0]}"
        )
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = m.shape[0]
    g = rng.generator()
    scale = math.sqrt(noise.variance * 0.5)
    signal_parts = []
    distortion_parts = []
    remaining = trials
    while remaining > 0:
        block = min(_MC_BLOCK, remaining)
        bits = g.integers(0, 2, size=(block, n, 2))
        x = ((1 - 2 * bits[..., 0]) + 1j * (1 - 2 * bits[..., 1])) * math.sqrt(0.5)
        nz = scale * (g.standard_normal((block, n)) + 1j * g.standard_normal((block, n)))
        r = x @ m.T + nz
        y = r @ w.matrix.T
        err = y - x
        signal_parts.append(float(np.sum(np.abs(x) ** 2)))
        distortion_parts.append(float(np.sum(np.abs(err) ** 2)))
        remaining -= block
    signal = math.fsum(signal_parts)
    distortion = math.fsum(distortion_parts)
    if distortion == 0.0:
        return math.inf
    return signal / distortion
