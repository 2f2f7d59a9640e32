"""Monte-Carlo channel sampler and empirical validators.

Ties the analytic stack to the physical model: a channel use releases M
particles at the chosen instant inside the symbol interval, each arrival is
the release time plus an independent Levy delay, and delays beyond the
lifetime are erasures.

Validators return an McReport whose seed fully determines every number in
it.  Large-M suites never materialize n*M delay draws: the first-arrival
suite samples the exact min-of-M law through its quantile function, and the
average-receiver suite draws the Binomial(M, F) arrival count per trial and
then that many truncated delays, which is the same joint law as brute force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as _stats

from .bounds import ChannelParams
from .distributions import (
    LevyLaw,
    TruncatedLevyLaw,
    gumbel_cdf,
    gumbel_from_min_levy,
    levy_cdf,
    levy_min_sample,
    levy_sample,
    min_of_levy_cdf,
    trunc_levy_mean,
    trunc_levy_sample,
    trunc_levy_var,
)
from .special import DomainError, NumericError

#: Channel output symbol for a particle that outlived tau_n and never arrived.
ERASED = None

_TRIAL_CHUNK = 2048  # bounds peak memory of the average-receiver suite


@dataclass(frozen=True)
class McReport:
    n_samples: int
    seed: int
    ks_statistic: float
    empirical_mean: float
    empirical_var: float
    arrival_fraction: float
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "ks_statistic": self.ks_statistic,
            "empirical_mean": self.empirical_mean,
            "empirical_var": self.empirical_var,
            "arrival_fraction": self.arrival_fraction,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class MiEstimate:
    bits_per_channel_use: float
    bits_per_sec: float
    n_samples: int
    bins: int
    input_law: str = "uniform[0,tau_x]"

    def as_dict(self) -> dict:
        return {
            "bits_per_channel_use": self.bits_per_channel_use,
            "bits_per_sec": self.bits_per_sec,
            "n_samples": self.n_samples,
            "bins": self.bins,
            "input_law": self.input_law,
        }


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def split_streams(seed: int, k: int) -> list[np.random.Generator]:
    """k independent substreams derived from one master seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(int(seed)).spawn(k)]


# ---------------------------------------------------------------------------
# Channel sampler
# ---------------------------------------------------------------------------

def simulate_channel_use(params: ChannelParams, t_x: float, rng) -> list:
    """One channel use: M outcomes, each t_x + delay if the delay is within
    the lifetime, else ERASED.  Arrivals lie in [t_x, t_x + tau_n]."""
    if not (0.0 <= t_x <= params.tau_x):
        raise DomainError(f"release time must lie in [0, tau_x], got {t_x!r}")
    delays = np.atleast_1d(levy_sample(LevyLaw(c=params.c), rng, size=params.m))
    return [t_x + d if d <= params.tau_n else ERASED for d in delays]


def simulate_sequence(params: ChannelParams, t_xs, rng) -> list:
    """Consecutive channel uses at absolute time.  Use k occupies
    [(k-1)(tau_x+tau_n), k(tau_x+tau_n)); releases happen at the use start
    plus the given in-interval offsets, so arrivals never cross uses."""
    out = []
    duration = params.use_duration
    for k, t_x in enumerate(t_xs):
        base = k * duration
        outcomes = simulate_channel_use(params, float(t_x), rng)
        out.append([base + y if y is not ERASED else ERASED for y in outcomes])
    return out


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------

def levy_transform_validate(c: float, n: int, seed: int) -> McReport:
    """KS of n transform-sampled delays against the Levy cdf."""
    rng = rng_from_seed(seed)
    law = LevyLaw(c=c)
    x = np.asarray(levy_sample(law, rng, size=n))
    ks = _stats.kstest(x, lambda t: levy_cdf(law, t)).statistic
    med = float(np.median(x))
    return McReport(
        n_samples=n,
        seed=seed,
        ks_statistic=float(ks),
        empirical_mean=med,
        empirical_var=float("nan"),
        arrival_fraction=1.0,
        notes=f"levy transform sampler, c={c}; heavy tail: empirical_mean holds the median",
    )


def first_arrival_validate(c: float, tau_n: float, m: int, n: int, seed: int) -> McReport:
    """KS of n exact min-of-m delays against the limiting Gumbel law."""
    if m < 2:
        raise DomainError(f"first_arrival_validate requires m >= 2, got {m!r}")
    rng = rng_from_seed(seed)
    law = LevyLaw(c=c)
    mins = np.asarray(levy_min_sample(law, m, rng, size=n))
    glaw = gumbel_from_min_levy(c, m)
    ks = _stats.kstest(mins, lambda t: gumbel_cdf(glaw, t)).statistic
    return McReport(
        n_samples=n,
        seed=seed,
        ks_statistic=float(ks),
        empirical_mean=float(np.mean(mins)),
        empirical_var=float(np.var(mins)),
        arrival_fraction=float(np.mean(mins <= tau_n)),
        notes=(
            f"min of m={m} levy delays vs gumbel(alpha={glaw.alpha:.6g}, beta={glaw.beta:.6g}); "
            f"arrival target {min_of_levy_cdf(law, m, tau_n):.6g}"
        ),
    )


def average_receiver_validate(c: float, tau_n: float, m: int, n: int, seed: int) -> McReport:
    """Per trial: Binomial(m, F) arrivals, that many truncated delays, their
    mean, minus the truncated mean; KS of the standardized values against the
    standard normal.  Trials with zero arrivals are dropped and counted."""
    rng = rng_from_seed(seed)
    law = LevyLaw(c=c)
    tlaw = TruncatedLevyLaw(c=c, tau=tau_n)
    f_tau = levy_cdf(law, tau_n)
    if f_tau <= 0.0:
        raise DomainError(f"arrival mass underflows for c={c!r}, tau_n={tau_n!r}")
    mean_t = trunc_levy_mean(tlaw)
    sigma2 = trunc_levy_var(tlaw) / (m * f_tau)

    centered = np.empty(n)
    kept = 0
    dropped = 0
    arrivals_total = 0
    for start in range(0, n, _TRIAL_CHUNK):
        trials = min(_TRIAL_CHUNK, n - start)
        counts = rng.binomial(m, f_tau, size=trials)
        arrivals_total += int(counts.sum())
        nz = counts > 0
        dropped += int(trials - nz.sum())
        total = int(counts[nz].sum())
        if total == 0:
            continue
        draws = np.asarray(trunc_levy_sample(tlaw, rng, size=total))
        idx = np.repeat(np.arange(int(nz.sum())), counts[nz])
        sums = np.bincount(idx, weights=draws, minlength=int(nz.sum()))
        avg = sums / counts[nz]
        centered[kept : kept + len(avg)] = avg - mean_t
        kept += len(avg)
    centered = centered[:kept]
    std = centered / math.sqrt(sigma2)
    ks = _stats.kstest(std, "norm").statistic
    return McReport(
        n_samples=n,
        seed=seed,
        ks_statistic=float(ks),
        empirical_mean=float(np.mean(centered)),
        empirical_var=float(np.var(centered)),
        arrival_fraction=float(arrivals_total / (n * m)),
        notes=(
            f"avg of binomial(m={m}, F={f_tau:.6g}) truncated arrivals; "
            f"target var {sigma2:.6g}; dropped {dropped} empty trials"
        ),
    )


# ---------------------------------------------------------------------------
# Mutual-information estimator
# ---------------------------------------------------------------------------

def _histogram_mi_bits(x: np.ndarray, y: np.ndarray, x_edges: np.ndarray, bins_y: int) -> float:
    # Plug-in MI over a grid with equal-mass output bins, plus the
    # Miller-Madow occupancy correction for the first-order plug-in bias.
    y_edges = np.quantile(y, np.linspace(0.0, 1.0, bins_y + 1))
    y_edges[0] -= 1e-12
    y_edges[-1] += 1e-12
    counts, _, _ = np.histogram2d(x, y, bins=[x_edges, y_edges])
    n = counts.sum()
    if n == 0 or (counts > 0).sum() <= 1:
        raise NumericError("degenerate histogram: no informative cells")
    p = counts / n
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = p * np.log2(p / (px * py))
    mi = float(np.nansum(terms))
    k_xy = int((p > 0).sum())
    k_x = int((px > 0).sum())
    k_y = int((py > 0).sum())
    correction = (k_xy - k_x - k_y + 1) / (2.0 * n * math.log(2.0))
    return mi - correction


def estimate_mi_single(
    params: ChannelParams,
    n: int,
    seed: int,
    bins: int | None = None,
    independent_output: bool = False,
) -> MiEstimate:
    """Plug-in estimate of the single-particle information rate under uniform
    release times.

    Arrived (release, arrival) pairs are histogrammed with equal-width input
    bins and equal-mass output bins; the conditional MI is scaled by the
    empirical arrival fraction and the channel-use duration.  With
    independent_output the arrivals are replaced by fresh unrelated ones --
    a zero-information control for estimator bias.
    """
    if params.m != 1:
        raise DomainError(f"estimate_mi_single requires m = 1, got m={params.m!r}")
    if params.tau_x <= 0.0:
        return MiEstimate(0.0, 0.0, n, 0)
    rng = rng_from_seed(seed)
    if bins is None:
        bins = min(256, int(round(n ** (1.0 / 3.0))))
    law = LevyLaw(c=params.c)
    t_x = rng.uniform(0.0, params.tau_x, size=n)
    delays = np.asarray(levy_sample(law, rng, size=n))
    arrived = delays <= params.tau_n
    frac = float(arrived.mean())
    if frac == 0.0:
        return MiEstimate(0.0, 0.0, n, bins)
    t_y = t_x[arrived] + delays[arrived]
    if independent_output:
        n_arr = int(arrived.sum())
        fresh_x = rng.uniform(0.0, params.tau_x, size=n_arr)
        fresh_d = np.asarray(
            trunc_levy_sample(TruncatedLevyLaw(c=params.c, tau=params.tau_n), rng, size=n_arr)
        )
        t_y = fresh_x + fresh_d
    x_edges = np.linspace(0.0, params.tau_x, bins + 1)
    mi_cond = _histogram_mi_bits(t_x[arrived], t_y, x_edges, bins)
    per_use = frac * mi_cond
    return MiEstimate(
        bits_per_channel_use=per_use,
        bits_per_sec=per_use / params.use_duration,
        n_samples=n,
        bins=bins,
    )
