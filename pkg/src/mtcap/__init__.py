"""mtcap: capacity bounds of diffusion-based molecular timing channels.

Times are in seconds, rates in bits/sec, entropies in bits throughout.
"""

from .bounds import (
    BOUND_KINDS,
    BoundResult,
    ChannelParams,
    avg_lb_at,
    avg_ub_at,
    bound_at,
    diversity_ub_at,
    evaluate,
    fa_lb_at,
    fa_ub_at,
    m_function,
    single_lb_at,
    single_lb_stationary_tau_x,
    single_ub_at,
    single_ub_explicit,
    v_binomial,
)
from .distributions import (
    GumbelLaw,
    LevyLaw,
    TruncatedLevyLaw,
    gumbel_cdf,
    gumbel_from_min_levy,
    gumbel_pdf,
    levy_cdf,
    levy_entropy,
    levy_min_sample,
    levy_pdf,
    levy_sample,
    min_of_levy_cdf,
    trunc_levy_m2,
    trunc_levy_mean,
    trunc_levy_pdf,
    trunc_levy_sample,
    trunc_levy_var,
)
from .entropy import (
    conditional_entropy,
    gaussian_entropy_avg_noise,
    gumbel_conditional_entropy,
    gumbel_entropy,
    levy_conditional_entropy,
    partial_entropy_gumbel,
    partial_entropy_levy,
)
from .optimize import SearchSpec, default_tau_n_spec, default_tau_x_spec, maximize_1d, maximize_2d, maximize_bound
from .simulate import (
    ERASED,
    McReport,
    MiEstimate,
    average_receiver_validate,
    estimate_mi_single,
    first_arrival_validate,
    levy_transform_validate,
    rng_from_seed,
    simulate_channel_use,
    simulate_sequence,
)
from .special import (
    DEFAULT_SERIES_CONTROL,
    DomainError,
    NumericError,
    SeriesControl,
    erfc,
    erfcinv,
    expint_ei,
    hyp1f1,
    hyp2f2_g,
    upper_incomplete_gamma,
    upper_incomplete_gamma_dparam,
)
from .sweep import OPTIMIZE, SweepSpec, SweepTable, figure, figure_spec, run_sweep, table1

__version__ = "0.1.0"
