"""Seeded, parallelizable Monte Carlo experiment drivers.

Each runner produces a :class:`ResultTable` of tagged rows with means and
standard errors.  Trials are partitioned into fixed-size blocks; every
block derives its own random substream from ``(master_seed, experiment
tag, grid-point index, block index)`` and blocks are reduced in a fixed
order with exact summation, so results are bit-identical regardless of the
worker count and of how blocks are scheduled.

Two receive-SNR conventions coexist and are recorded per table:

* ``"receive_n_over_sigma2"`` - BER and gain sweeps define receive SNR as
  ``N / noise_variance``, which matches the per-antenna SNR under the
  squared-Frobenius-norm-equals-N^2 channel normalization.
* ``"inverse_sigma2"`` - the condition-ratio sweep defines SNR as
  ``1 / noise_variance``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .analysis import cond_ratio_approx, edelman_tail
from .channel import DEFAULT_MAX_ATTEMPTS, NoiseModel, RngStream
from .exceptions import DimensionError, SamplingExhaustedError

_BLOCK = 8192

# Stable experiment tags used as stream-key components.
_TAG_TABLE1 = 1
_TAG_GAIN = 2
_TAG_CDF = 3
_TAG_EDELMAN = 4
_TAG_BER = 5
_TAG_CONDRATIO = 6

CONVENTION_RECEIVE = "receive_n_over_sigma2"
CONVENTION_INVERSE = "inverse_sigma2"

#: Default grid on which minimum-singular-value CDFs are tabulated.
DEFAULT_CDF_GRID = tuple(np.round(np.arange(0.0, 1.5001, 0.025), 6))

#: Default scaled-minimum-singular-value tail abscissas.
DEFAULT_TAIL_GRID = (0.25, 0.5, 1.0, 1.5, 2.0, 3.0)


@dataclass
class SimConfig:
    """Validated description of a Monte Carlo experiment."""

    dims: tuple[int, ...] = ()
    snr_grid_db: tuple[float, ...] = ()
    trials: int = 1
    master_seed: int = 0
    sigma_min_floor: float | None = None
    cond_target: float | None = None
    sigma_min_grid: tuple[float, ...] = ()
    workers: int = 1

    def __post_init__(self):
        self.dims = tuple(int(n) for n in self.dims)
        self.snr_grid_db = tuple(float(s) for s in self.snr_grid_db)
        self.sigma_min_grid = tuple(float(s) for s in self.sigma_min_grid)
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if any(n < 2 for n in self.dims):
            raise ValueError(f"all dims must be >= 2, got {self.dims}")
        if self.master_seed < 0:
            raise ValueError("master_seed must be nonnegative")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.sigma_min_floor is not None and self.sigma_min_floor < 0:
            raise ValueError("sigma_min_floor must be >= 0")
        if self.cond_target is not None and self.cond_target < 1:
            raise ValueError("cond_target must be >= 1")


@dataclass
class ResultTable:
    """Tagged experiment output rows plus reproducibility metadata.

    Every row additionally carries the master seed and trial count that
    produced it; ``columns`` lists the documented serialization schema.
    """

    experiment: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def select(self, **criteria) -> list[dict]:
        """Rows whose fields equal all given criteria."""
        out = []
        for row in self.rows:
            if all(row.get(k) == v for k, v in criteria.items()):
                out.append(row)
        return out


def noise_var_from_snr(snr_db: float, n: int) -> NoiseModel:
    """Noise variance for a per-antenna receive SNR of ``snr_db`` dB.

    Under the N^2 channel power normalization the receive SNR per antenna
    is ``N / variance``, so ``variance = N / 10**(snr_db / 10)``.
    """
    if n < 1:
        raise DimensionError(f"dimension must be >= 1, got {n}")
    return NoiseModel(n / 10.0 ** (float(snr_db) / 10.0))


def noise_var_from_inverse_snr(snr_db: float) -> NoiseModel:
    """Noise variance under the ``1 / variance`` dB convention."""
    return NoiseModel(10.0 ** (-float(snr_db) / 10.0))


# ---------------------------------------------------------------------------
# block scheduling
# ---------------------------------------------------------------------------


def _block_sizes(trials: int, block: int = _BLOCK) -> list[int]:
    sizes = [block] * (trials // block)
    if trials % block:
        sizes.append(trials % block)
    return sizes


def _run_blocks(worker, tasks: list, workers: int) -> list:
    """Run block tasks, preserving task order in the returned partials."""
    if workers <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(worker, tasks))


def _mean_se(total: float, total_sq: float, count: int) -> tuple[float, float]:
    if count < 1:
        return math.nan, math.nan
    mean = total / count
    if count == 1:
        return mean, math.nan
    var = max(0.0, (total_sq - count * mean * mean) / (count - 1))
    return mean, math.sqrt(var / count)


def _complex_gaussian_block(g: np.random.Generator, count: int, n: int) -> np.ndarray:
    re = g.standard_normal((count, n, n))
    im = g.standard_normal((count, n, n))
    return (re + 1j * im) * math.sqrt(0.5)


def _normalized_block(g: np.random.Generator, count: int, n: int) -> np.ndarray:
    raw = _complex_gaussian_block(g, count, n)
    fro = np.linalg.norm(raw, axis=(1, 2))
    return raw * (n / fro)[:, None, None]


# ---------------------------------------------------------------------------
# minimum singular value and condition number statistics
# ---------------------------------------------------------------------------


def _table1_block(args):
    seed, key, n, count = args
    g = RngStream(seed, key).generator()
    h = _normalized_block(g, count, n)
    s = np.linalg.svd(h, compute_uv=False)
    smin = s[:, -1]
    cond = s[:, 0] / s[:, -1]
    return (
        count,
        float(np.sum(smin)),
        float(np.sum(smin * smin)),
        float(np.sum(cond)),
        float(np.sum(cond * cond)),
    )


def run_table1(dims, trials: int = 10000, master_seed: int = 0, workers: int = 1) -> ResultTable:
    """Mean minimum singular value and condition number per dimension.

    Samples ``trials`` normalized channel realizations for each ``N`` in
    ``dims``.  Standard errors capture Monte Carlo noise and should only be
    trusted for trial counts of roughly a thousand or more.
    """
    cfg = SimConfig(dims=tuple(dims), trials=trials, master_seed=master_seed, workers=workers)
    table = ResultTable(
        experiment="table1",
        columns=["n", "mean_sigma_min", "se_sigma_min", "mean_cond", "se_cond"],
        metadata={
            "seed": cfg.master_seed,
            "trials": cfg.trials,
            "snr_convention": "none",
            "version": __version__,
            "dims": list(cfg.dims),
        },
    )
    for n in cfg.dims:
        tasks = [
            (cfg.master_seed, (_TAG_TABLE1, n, bi), n, size)
            for bi, size in enumerate(_block_sizes(cfg.trials))
        ]
        parts = _run_blocks(_table1_block, tasks, cfg.workers)
        count = sum(p[0] for p in parts)
        sum_s = math.fsum(p[1] for p in parts)
        sum_s2 = math.fsum(p[2] for p in parts)
        sum_c = math.fsum(p[3] for p in parts)
        sum_c2 = math.fsum(p[4] for p in parts)
        mean_s, se_s = _mean_se(sum_s, sum_s2, count)
        mean_c, se_c = _mean_se(sum_c, sum_c2, count)
        table.rows.append(
            {
                "n": n,
                "mean_sigma_min": mean_s,
                "se_sigma_min": se_s,
                "mean_cond": mean_c,
                "se_cond": se_c,
                "seed": cfg.master_seed,
                "trials": cfg.trials,
            }
        )
    return table


# ---------------------------------------------------------------------------
# formula-based post-processing SNR gain sweep
# ---------------------------------------------------------------------------


def _gain_block(args):
    seed, key, n, variance, count = args
    g = RngStream(seed, key).generator()
    h = _normalized_block(g, count, n)
    s = np.linalg.svd(h, compute_uv=False)
    s2 = s * s
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        snr_zf = n / np.sum(variance / s2, axis=1)
        t = s2 / (s2 + variance)
        a = np.sum(t, axis=1) ** 2
        b = np.sum(t * t, axis=1)
        c = np.sum(s2 / (s2 + variance) ** 2, axis=1)
        den = variance * (n + 1) * c + n * b - a
        snr_mmse = (a + b) / den
        gain = 10.0 * np.log10(snr_mmse / snr_zf)
    finite = np.isfinite(gain)
    kept = gain[finite]
    return (
        int(np.count_nonzero(finite)),
        float(np.sum(kept)),
        float(np.sum(kept * kept)),
        int(count - np.count_nonzero(finite)),
    )


def run_gain_sweep(
    dims,
    snr_grid_db,
    trials: int = 5000,
    master_seed: int = 0,
    workers: int = 1,
) -> ResultTable:
    """Mean MMSE-over-ZF post-processing SNR gain (dB) per (N, receive SNR).

    For each normalized channel realization the two SNRs are evaluated in
    closed form from the spectrum and the gain is averaged in dB.  Rows
    report how many realizations produced non-finite gains and were
    excluded.
    """
    cfg = SimConfig(
        dims=tuple(dims),
        snr_grid_db=tuple(snr_grid_db),
        trials=trials,
        master_seed=master_seed,
        workers=workers,
    )
    if not cfg.snr_grid_db:
        raise ValueError("snr_grid_db must be nonempty")
    table = ResultTable(
        experiment="gain",
        columns=["n", "snr_db", "mean_gain_db", "se_gain_db", "n_excluded"],
        metadata={
            "seed": cfg.master_seed,
            "trials": cfg.trials,
            "snr_convention": CONVENTION_RECEIVE,
            "version": __version__,
            "dims": list(cfg.dims),
            "snr_grid_db": list(cfg.snr_grid_db),
        },
    )
    for n in cfg.dims:
        for si, snr_db in enumerate(cfg.snr_grid_db):
            variance = noise_var_from_snr(snr_db, n).variance
            tasks = [
                (cfg.master_seed, (_TAG_GAIN, n, si, bi), n, variance, size)
                for bi, size in enumerate(_block_sizes(cfg.trials))
            ]
            parts = _run_blocks(_gain_block, tasks, cfg.workers)
            kept = sum(p[0] for p in parts)
            sum_g = math.fsum(p[1] for p in parts)
            sum_g2 = math.fsum(p[2] for p in parts)
            excluded = sum(p[3] for p in parts)
            mean_g, se_g = _mean_se(sum_g, sum_g2, kept)
            table.rows.append(
                {
                    "n": n,
                    "snr_db": snr_db,
                    "mean_gain_db": mean_g,
                    "se_gain_db": se_g,
                    "n_excluded": excluded,
                    "seed": cfg.master_seed,
                    "trials": cfg.trials,
                }
            )
    return table


# ---------------------------------------------------------------------------
# minimum singular value CDFs and the scaled tail law
# ---------------------------------------------------------------------------


def _cdf_block(args):
    seed, key, n, grid, count = args
    g = RngStream(seed, key).generator()
    h = _normalized_block(g, count, n)
    smin = np.linalg.svd(h, compute_uv=False)[:, -1]
    grid_arr = np.asarray(grid)
    below = np.count_nonzero(smin[:, None] <= grid_arr[None, :], axis=0)
    return (count, below.astype(np.int64))


def _edelman_block(args):
    seed, key, n, tail_grid, count = args
    g = RngStream(seed, key).generator()
    # Real Gaussian entries with variance 1/n: the ensemble whose scaled
    # minimum singular value has the exp(-x - x^2/2) limit law.
    raw = g.standard_normal((count, n, n)) / math.sqrt(n)
    smin = np.linalg.svd(raw, compute_uv=False)[:, -1]
    scaled = n * smin
    grid_arr = np.asarray(tail_grid)
    at_least = np.count_nonzero(scaled[:, None] >= grid_arr[None, :], axis=0)
    return (count, at_least.astype(np.int64))


def run_min_singular_cdf(
    dims,
    trials: int = 20000,
    master_seed: int = 0,
    workers: int = 1,
    grid=DEFAULT_CDF_GRID,
    tail_grid=DEFAULT_TAIL_GRID,
) -> ResultTable:
    """Empirical minimum-singular-value CDFs, plus the scaled tail law.

    Produces ``statistic == "cdf_sigma_min"`` rows with the empirical CDF of
    the smallest singular value of normalized channels for each ``N`` in
    ``dims``, and ``statistic == "tail_scaled_sigma_min"`` rows for the
    largest ``N``: the empirical ``P[N * sigma_min >= x]`` over unnormalized
    real Gaussian matrices (entry variance ``1/N``) next to the asymptotic
    reference ``exp(-x - x^2/2)``.
    """
    cfg = SimConfig(dims=tuple(dims), trials=trials, master_seed=master_seed, workers=workers)
    grid = tuple(float(x) for x in grid)
    tail_grid = tuple(float(x) for x in tail_grid)
    if not grid or not tail_grid:
        raise ValueError("grid and tail_grid must be nonempty")
    table = ResultTable(
        experiment="cdf",
        columns=["statistic", "n", "x", "value", "se", "reference"],
        metadata={
            "seed": cfg.master_seed,
            "trials": cfg.trials,
            "snr_convention": "none",
            "version": __version__,
            "dims": list(cfg.dims),
        },
    )
    for n in cfg.dims:
        tasks = [
            (cfg.master_seed, (_TAG_CDF, n, bi), n, grid, size)
            for bi, size in enumerate(_block_sizes(cfg.trials))
        ]
        parts = _run_blocks(_cdf_block, tasks, cfg.workers)
        count = sum(p[0] for p in parts)
        below = np.sum([p[1] for p in parts], axis=0)
        for x, k in zip(grid, below):
            p = float(k / count)
            table.rows.append(
                {
                    "statistic": "cdf_sigma_min",
                    "n": n,
                    "x": x,
                    "value": p,
                    "se": math.sqrt(p * (1.0 - p) / count),
                    "reference": None,
                    "seed": cfg.master_seed,
                    "trials": cfg.trials,
                }
            )
    n_tail = max(cfg.dims)
    tasks = [
        (cfg.master_seed, (_TAG_EDELMAN, n_tail, bi), n_tail, tail_grid, size)
        for bi, size in enumerate(_block_sizes(cfg.trials))
    ]
    parts = _run_blocks(_edelman_block, tasks, cfg.workers)
    count = sum(p[0] for p in parts)
    at_least = np.sum([p[1] for p in parts], axis=0)
    for x, k in zip(tail_grid, at_least):
        p = float(k / count)
        table.rows.append(
            {
                "statistic": "tail_scaled_sigma_min",
                "n": n_tail,
                "x": x,
                "value": p,
                "se": math.sqrt(p * (1.0 - p) / count),
                "reference": edelman_tail(x),
                "seed": cfg.master_seed,
                "trials": cfg.trials,
            }
        )
    return table


# ---------------------------------------------------------------------------
# paired ZF/MMSE BER sweep
# ---------------------------------------------------------------------------


def _ber_block(args):
    seed, key, n, variance, floor, max_attempts, count = args
    g = RngStream(seed, key).generator()
    h = _normalized_block(g, count, n)
    if floor > 0.0:
        attempts = 1
        while True:
            smin = np.linalg.svd(h, compute_uv=False)[:, -1]
            bad = smin < floor
            n_bad = int(np.count_nonzero(bad))
            if n_bad == 0:
                break
            attempts += 1
            if attempts > max_attempts:
                raise SamplingExhaustedError(
                    f"no draw with sigma_min >= {floor} for {n_bad} of {count} "
                    f"slots within {max_attempts} attempts (n={n})",
                    attempts=max_attempts,
                )
            h[bad] = _normalized_block(g, n_bad, n)
    bits = g.integers(0, 2, size=(count, n, 2))
    x = ((1 - 2 * bits[..., 0]) + 1j * (1 - 2 * bits[..., 1])) * math.sqrt(0.5)
    noise = math.sqrt(variance / 2.0) * (
        g.standard_normal((count, n)) + 1j * g.standard_normal((count, n))
    )
    # Both detectors see the identical (H, x, n) triple per trial.
    r = np.einsum("bij,bj->bi", h, x) + noise
    hh = h.conj().transpose(0, 2, 1)
    gram = hh @ h
    w_zf = np.linalg.solve(gram, hh)
    w_mmse = np.linalg.solve(gram + variance * np.eye(n), hh)
    y_zf = np.einsum("bij,bj->bi", w_zf, r)
    y_mmse = np.einsum("bij,bj->bi", w_mmse, r)
    hat_zf = np.stack([y_zf.real < 0, y_zf.imag < 0], axis=-1)
    hat_mmse = np.stack([y_mmse.real < 0, y_mmse.imag < 0], axis=-1)
    sent = bits.astype(bool)
    k_zf = np.count_nonzero(hat_zf != sent, axis=(1, 2)).astype(np.int64)
    k_mmse = np.count_nonzero(hat_mmse != sent, axis=(1, 2)).astype(np.int64)
    diff = k_zf - k_mmse
    return (
        count,
        int(np.sum(k_zf)),
        int(np.sum(k_zf * k_zf)),
        int(np.sum(k_mmse)),
        int(np.sum(k_mmse * k_mmse)),
        int(np.sum(diff * diff)),
    )


#: Rows whose accumulated bit errors fall below this count are flagged.
LOW_CONFIDENCE_ERRORS = 100


def run_ber_sweep(
    n: int,
    snr_grid_db,
    sigma_min_floor: float = 0.0,
    trials: int = 200000,
    master_seed: int = 0,
    workers: int = 1,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> ResultTable:
    """Paired ZF/MMSE QPSK bit error rates over floored channel realizations.

    Every trial uses a fresh channel, fresh bits, and fresh noise; both
    detectors process the identical triple, so the per-trial error-count
    difference is a paired statistic and its standard error
    (``se_paired_diff``) is far smaller than for independent runs.  Rows
    with fewer than ``LOW_CONFIDENCE_ERRORS`` accumulated bit errors carry
    ``low_confidence = 1``.
    """
    cfg = SimConfig(
        dims=(n,),
        snr_grid_db=tuple(snr_grid_db),
        trials=trials,
        master_seed=master_seed,
        sigma_min_floor=float(sigma_min_floor),
        workers=workers,
    )
    if not cfg.snr_grid_db:
        raise ValueError("snr_grid_db must be nonempty")
    floor = float(sigma_min_floor)
    table = ResultTable(
        experiment="ber",
        columns=[
            "detector",
            "snr_db",
            "ber",
            "bit_errors",
            "bits",
            "se_ber",
            "se_paired_diff",
            "low_confidence",
        ],
        metadata={
            "seed": cfg.master_seed,
            "trials": cfg.trials,
            "snr_convention": CONVENTION_RECEIVE,
            "version": __version__,
            "n": n,
            "sigma_min_floor": floor,
            "snr_grid_db": list(cfg.snr_grid_db),
        },
    )
    bits_per_trial = 2 * n
    for si, snr_db in enumerate(cfg.snr_grid_db):
        variance = noise_var_from_snr(snr_db, n).variance
        tasks = [
            (cfg.master_seed, (_TAG_BER, si, bi), n, variance, floor, max_attempts, size)
            for bi, size in enumerate(_block_sizes(cfg.trials))
        ]
        parts = _run_blocks(_ber_block, tasks, cfg.workers)
        count = sum(p[0] for p in parts)
        sum_z = sum(p[1] for p in parts)
        sumsq_z = sum(p[2] for p in parts)
        sum_m = sum(p[3] for p in parts)
        sumsq_m = sum(p[4] for p in parts)
        sumsq_d = sum(p[5] for p in parts)
        total_bits = count * bits_per_trial
        _, se_kd = _mean_se(float(sum_z - sum_m), float(sumsq_d), count)
        se_paired = se_kd / bits_per_trial if count > 1 else math.nan
        for detector, errors, sumsq in (("zf", sum_z, sumsq_z), ("mmse", sum_m, sumsq_m)):
            _, se_k = _mean_se(float(errors), float(sumsq), count)
            table.rows.append(
                {
                    "detector": detector,
                    "snr_db": snr_db,
                    "ber": errors / total_bits,
                    "bit_errors": errors,
                    "bits": total_bits,
                    "se_ber": se_k / bits_per_trial if count > 1 else math.nan,
                    "se_paired_diff": se_paired,
                    "low_confidence": int(errors < LOW_CONFIDENCE_ERRORS),
                    "seed": cfg.master_seed,
                    "trials": cfg.trials,
                }
            )
    return table


# ---------------------------------------------------------------------------
# filtering-matrix condition-number ratio sweep
# ---------------------------------------------------------------------------


def _haar_block(g: np.random.Generator, count: int, n: int) -> np.ndarray:
    z = _complex_gaussian_block(g, count, n)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    mag = np.abs(d)
    phases = np.where(mag == 0.0, 1.0, d / np.where(mag == 0.0, 1.0, mag))
    return q * phases[:, None, :]


def _cond_ratio_block(args):
    seed, key, n, spectrum, variance, count = args
    g = RngStream(seed, key).generator()
    s = np.asarray(spectrum)
    u = _haar_block(g, count, n)
    v = _haar_block(g, count, n)
    h = (u * s[None, None, :]) @ v.conj().transpose(0, 2, 1)
    hh = h.conj().transpose(0, 2, 1)
    gram = hh @ h
    w_zf = np.linalg.solve(gram, hh)
    w_mmse = np.linalg.solve(gram + variance * np.eye(n), hh)
    sv_zf = np.linalg.svd(w_zf, compute_uv=False)
    sv_mmse = np.linalg.svd(w_mmse, compute_uv=False)
    cond_zf = sv_zf[:, 0] / sv_zf[:, -1]
    cond_mmse = sv_mmse[:, 0] / sv_mmse[:, -1]
    ratio = cond_mmse / cond_zf
    return (
        count,
        float(np.sum(ratio)),
        float(np.sum(ratio * ratio)),
        float(np.sum(cond_zf)),
        float(np.sum(cond_mmse)),
    )


def run_cond_ratio_sweep(
    n: int,
    cond_target: float,
    sigma_min_grid,
    snr_db: float = 10.0,
    trials: int = 200,
    master_seed: int = 0,
    workers: int = 1,
    interior: str = "top",
) -> ResultTable:
    """Exact vs approximate cond(W_mmse)/cond(W_zf) over synthesized channels.

    Channels have prescribed condition number ``cond_target`` and smallest
    singular value swept over ``sigma_min_grid``; the noise variance follows
    the ``1 / variance`` dB convention of this experiment.  The approximate
    ratio depends only on the prescribed spectrum endpoints and is reported
    alongside the Monte Carlo mean of the exact ratio.
    """
    cfg = SimConfig(
        dims=(n,),
        trials=trials,
        master_seed=master_seed,
        cond_target=float(cond_target),
        sigma_min_grid=tuple(sigma_min_grid),
        workers=workers,
    )
    if not cfg.sigma_min_grid:
        raise ValueError("sigma_min_grid must be nonempty")
    if any(s <= 0 for s in cfg.sigma_min_grid):
        raise ValueError("sigma_min_grid values must be > 0")
    variance = noise_var_from_inverse_snr(snr_db).variance
    noise = NoiseModel(variance)
    table = ResultTable(
        experiment="condratio",
        columns=[
            "sigma_min",
            "mean_exact_ratio",
            "se_exact_ratio",
            "approx_ratio",
            "mean_cond_w_zf",
            "mean_cond_w_mmse",
        ],
        metadata={
            "seed": cfg.master_seed,
            "trials": cfg.trials,
            "snr_convention": CONVENTION_INVERSE,
            "version": __version__,
            "n": n,
            "cond_target": cfg.cond_target,
            "snr_db": float(snr_db),
            "interior": interior,
        },
    )
    for gi, sigma_min in enumerate(cfg.sigma_min_grid):
        if interior == "top":
            spectrum = np.full(n, cfg.cond_target * sigma_min)
            spectrum[-1] = sigma_min
        elif interior == "geometric":
            spectrum = np.geomspace(cfg.cond_target * sigma_min, sigma_min, n)
            spectrum[0] = cfg.cond_target * sigma_min
            spectrum[-1] = sigma_min
        else:
            raise ValueError(f"unknown interior profile {interior!r}")
        tasks = [
            (
                cfg.master_seed,
                (_TAG_CONDRATIO, gi, bi),
                n,
                tuple(spectrum),
                variance,
                size,
            )
            for bi, size in enumerate(_block_sizes(cfg.trials))
        ]
        parts = _run_blocks(_cond_ratio_block, tasks, cfg.workers)
        count = sum(p[0] for p in parts)
        sum_r = math.fsum(p[1] for p in parts)
        sum_r2 = math.fsum(p[2] for p in parts)
        sum_cz = math.fsum(p[3] for p in parts)
        sum_cm = math.fsum(p[4] for p in parts)
        mean_r, se_r = _mean_se(sum_r, sum_r2, count)
        table.rows.append(
            {
                "sigma_min": sigma_min,
                "mean_exact_ratio": mean_r,
                "se_exact_ratio": se_r,
                "approx_ratio": cond_ratio_approx(
                    cfg.cond_target * sigma_min, sigma_min, noise
                ),
                "mean_cond_w_zf": sum_cz / count,
                "mean_cond_w_mmse": sum_cm / count,
                "seed": cfg.master_seed,
                "trials": cfg.trials,
            }
        )
    return table
