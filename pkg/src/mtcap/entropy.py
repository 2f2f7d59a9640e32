"""Partial and conditional entropies of the channel noise laws.

The partial entropy eta(X, tau) = -integral_{-inf}^tau f log2 f dx is the
building block: dividing by the truncation mass and adding its log gives the
conditional entropy h(X | X <= tau).  All values are in bits.

Numerical routes
----------------
Levy: the hypergeometric closed form is used for w = c/(2 tau) <= 5.  Its
bracketed terms are O(1) but their sum is O(erfc(sqrt(w))), so in double
precision it degrades once the truncation is deep; past w = 5 an equivalent
incomplete-gamma arrangement whose three terms are each O(e^-w) takes over.
Both routes are validated against quadrature of the defining integral.

Gumbel: the closed form is evaluated in a compensated arrangement, with the
constants 1 + gamma - Ei(-eps) folded into a small-argument series so nothing
cancels; it is accurate down to eta ~ 1e-300.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special as _sp

from .distributions import (
    GumbelLaw,
    LevyLaw,
    TruncatedLevyLaw,
    levy_cdf,
    levy_pdf,
    trunc_levy_var,
)
from .special import (
    DomainError,
    hyp2f2_g,
    upper_incomplete_gamma_dparam,
)

_LOG2E = math.log2(math.e)
_EULER_GAMMA = float(np.euler_gamma)
_SQRT_PI = math.sqrt(math.pi)

# Below this w the printed hypergeometric form of the Levy partial entropy is
# exact to ~1e-13 relative; above it the bracket cancellation exceeds ~1e-11
# and the incomplete-gamma arrangement is used instead.
_LEVY_ETA_SWITCH_W = 5.0


def _eta_levy_hyp(c: float, tau: float, w: float) -> float:
    # Closed form with g = 2F2(1/2,1/2;3/2,3/2;-w).
    law = LevyLaw(c=c)
    big_f = levy_cdf(law, tau)
    f_tau = levy_pdf(law, tau)
    g = hyp2f2_g(c, tau)
    bracket = (
        (big_f - 1.0) * math.log2(tau)
        - 4.0 * math.sqrt(c / (2.0 * math.pi * tau)) * g * _LOG2E
        + math.log2(c / 2.0)
        + _EULER_GAMMA * _LOG2E
        + 2.0
    )
    return (
        0.5 * math.log2(2.0 * math.pi / c) * big_f
        + 1.5 * bracket
        + _LOG2E * (0.5 * big_f + tau * f_tau)
    )


def _eta_levy_gamma(c: float, w: float) -> float:
    # Same integral, split in u = c/(2x) coordinates:
    #   eta = -log2(c/(2 pi))/2 * F + 3/2 [Gamma(1/2,w) log2(c/2)
    #         - Gamma'(1/2,w) log2(e)] / sqrt(pi) + log2(e) Gamma(3/2,w)/sqrt(pi)
    # Every term is O(e^-w), so nothing cancels under deep truncation.
    big_f = float(_sp.erfc(math.sqrt(w)))
    if big_f == 0.0:
        return 0.0
    g_half = _SQRT_PI * big_f
    g_prime = upper_incomplete_gamma_dparam(0.5, w)
    g_three_half = 0.5 * g_half + math.sqrt(w) * math.exp(-w)
    return (
        -0.5 * math.log2(c / (2.0 * math.pi)) * big_f
        + 1.5 * (g_half * math.log2(c / 2.0) - g_prime * _LOG2E) / _SQRT_PI
        + _LOG2E * g_three_half / _SQRT_PI
    )


def partial_entropy_levy(c: float, tau: float) -> float:
    """eta(X, tau) in bits for X ~ Levy(0, c)."""
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError(f"partial_entropy_levy requires c > 0, got {c!r}")
    if not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"partial_entropy_levy requires tau > 0, got {tau!r}")
    w = c / (2.0 * tau)
    if w <= _LEVY_ETA_SWITCH_W:
        return _eta_levy_hyp(c, tau, w)
    return _eta_levy_gamma(c, w)


def conditional_entropy(eta: float, f_tau: float) -> float:
    """h(X | X <= tau) = eta(X, tau)/F(tau) + log2 F(tau), for F(tau) in (0, 1]."""
    if not (0.0 < f_tau <= 1.0):
        raise DomainError(f"conditional_entropy requires F in (0, 1], got {f_tau!r}")
    return eta / f_tau + math.log2(f_tau)


@lru_cache(maxsize=1 << 16)
def levy_conditional_entropy(c: float, tau: float) -> float:
    """h(Tn | Tn <= tau) in bits for Tn ~ Levy(0, c); cached for grid sweeps."""
    f_tau = levy_cdf(LevyLaw(c=c), tau)
    if f_tau <= 0.0:
        raise DomainError(
            f"conditioning mass underflows for c={c!r}, tau={tau!r}"
        )
    return conditional_entropy(partial_entropy_levy(c, tau), f_tau)


def _ei_minus_gamma_log(eps: float) -> float:
    # S(eps) = Ei(-eps) - gamma - ln(eps) = sum_{k>=1} (-eps)^k / (k k!).
    # The series form avoids the gamma + ln eps cancellation for small eps.
    if eps > 1.0:
        return float(_sp.expi(-eps)) - _EULER_GAMMA - math.log(eps)
    total = 0.0
    term = 1.0
    for k in range(1, 60):
        term *= -eps / k
        contrib = term / k
        total += contrib
        if abs(contrib) < 1e-20 * abs(total) + 1e-320:
            break
    return total


def partial_entropy_gumbel(law: GumbelLaw, tau: float) -> float:
    """eta(X, tau) in bits for min-orientation Gumbel(alpha, beta).

    Closed form, arranged as F log2(beta) + log2(e) [(1-t) p - eps e^-eps
    - S(eps)] with t = (tau - alpha)/beta, eps = e^t, p = 1 - e^-eps and
    S(eps) = Ei(-eps) - gamma - ln eps.  Algebraically identical to expanding
    -integral f log f, but every term vanishes with eps, so the tau << alpha
    tail keeps full relative precision.
    """
    if not math.isfinite(tau):
        raise DomainError(f"partial_entropy_gumbel requires finite tau, got {tau!r}")
    t = (tau - law.alpha) / law.beta
    if t > 30.0:
        # exp(-e^t) < 1e-4e12: indistinguishable from the full entropy
        return gumbel_entropy(law)
    eps = math.exp(t)
    p = -math.expm1(-eps)
    bracket = (1.0 - t) * p - eps * math.exp(-eps) - _ei_minus_gamma_log(eps)
    return p * math.log2(law.beta) + _LOG2E * bracket


def gumbel_entropy(law: GumbelLaw) -> float:
    """Full-line entropy log2(beta) + (1 + gamma) log2(e), in bits."""
    return math.log2(law.beta) + _LOG2E * (1.0 + _EULER_GAMMA)


def gumbel_conditional_entropy(law: GumbelLaw, tau: float) -> float:
    """h(X | X <= tau) for a min-orientation Gumbel law, in bits."""
    t = (tau - law.alpha) / law.beta
    f_tau = float(-np.expm1(-np.exp(min(t, 700.0))))
    if f_tau <= 0.0:
        raise DomainError(
            f"conditioning mass underflows for gumbel {law!r} at tau={tau!r}"
        )
    return conditional_entropy(partial_entropy_gumbel(law, tau), f_tau)


def gaussian_entropy_avg_noise(c: float, tau_n: float, m: int) -> float:
    """Entropy of the averaged-arrival Gaussian noise,
    0.5 log2(2 pi e Var[T'_n] / (m F(tau_n))), in bits.

    T'_n is the lifetime-truncated delay; its variance over the expected
    number of arrivals m F(tau_n) is the limiting noise variance.
    """
    if m < 1:
        raise DomainError(f"gaussian_entropy_avg_noise requires m >= 1, got {m!r}")
    f_tau = levy_cdf(LevyLaw(c=c), tau_n)
    if f_tau <= 0.0:
        raise DomainError(
            f"arrival mass underflows for c={c!r}, tau_n={tau_n!r}"
        )
    var = trunc_levy_var(TruncatedLevyLaw(c=c, tau=tau_n))
    return 0.5 * math.log2(2.0 * math.pi * math.e * var / (m * f_tau))
