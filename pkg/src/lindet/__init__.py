"""Linear ZF/MMSE MIMO detection analysis and Monte Carlo experiments."""

from .channel import (
    ChannelRealization,
    NoiseModel,
    RngStream,
    normalize,
    sample_floored,
    sample_noise,
    sample_standard_gaussian,
    synthesize_spectrum,
    transmit,
)
from .detection import (
    FilterMatrix,
    count_bit_errors,
    equalize_and_slice,
    mmse_filter,
    qpsk_modulate,
    qpsk_slice,
    zf_filter,
)
from .analysis import (
    CondRatioReport,
    MmseAbc,
    cond_ratio_approx,
    cond_ratio_exact,
    edelman_tail,
    empirical_distortion_snr,
    gain_db,
    mmse_abc,
    snr_mmse,
    snr_zf,
    weyl_lower_bound,
)
from .exceptions import (
    DegenerateInputError,
    DimensionError,
    FormulaDomainError,
    LindetError,
    SamplingExhaustedError,
    SingularMatrixError,
)
from .linalg import SvdResult, condition_number, gram, inverse, svd
from .experiments import (
    ResultTable,
    SimConfig,
    noise_var_from_inverse_snr,
    noise_var_from_snr,
    run_ber_sweep,
    run_cond_ratio_sweep,
    run_gain_sweep,
    run_min_singular_cdf,
    run_table1,
)
from ._version import __version__

__all__ = [
    "ChannelRealization",
    "CondRatioReport",
    "ResultTable",
    "SimConfig",
    "noise_var_from_inverse_snr",
    "noise_var_from_snr",
    "run_ber_sweep",
    "run_cond_ratio_sweep",
    "run_gain_sweep",
    "run_min_singular_cdf",
    "run_table1",
    "DegenerateInputError",
    "DimensionError",
    "FilterMatrix",
    "FormulaDomainError",
    "LindetError",
    "MmseAbc",
    "NoiseModel",
    "RngStream",
    "SamplingExhaustedError",
    "SingularMatrixError",
    "SvdResult",
    "cond_ratio_approx",
    "cond_ratio_exact",
    "condition_number",
    "count_bit_errors",
    "edelman_tail",
    "empirical_distortion_snr",
    "equalize_and_slice",
    "gain_db",
    "gram",
    "inverse",
    "mmse_abc",
    "mmse_filter",
    "normalize",
    "qpsk_modulate",
    "qpsk_slice",
    "sample_floored",
    "sample_noise",
    "sample_standard_gaussian",
    "snr_mmse",
    "snr_zf",
    "svd",
    "synthesize_spectrum",
    "transmit",
    "weyl_lower_bound",
    "zf_filter",
]
