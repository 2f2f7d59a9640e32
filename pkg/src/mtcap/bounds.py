"""Capacity bounds of the diffusion-based molecular timing channel.

A channel use lasts tau_x + tau_n seconds: the transmitter may release its
M particles anywhere in the symbol interval [0, tau_x], and a particle whose
Levy-distributed delay exceeds the lifetime tau_n never arrives.  Every bound
below is an achievable-rate lower bound or a converse upper bound on the
bits/sec capacity of that channel:

  single_lb / single_ub   one particle per use (entropy-power / support bound)
  diversity_ub            all M arrival times observed
  fa_lb / fa_ub           detector sees only the first arrival; the min-delay
                          law is approximated by its Gumbel limit
  avg_lb / avg_ub         detector sees the mean arrival time; the averaged
                          noise converges to a Gaussian

Lower-bound numerators can come out negative where the bound is weak (tiny
tau_x); since rate 0 is trivially achievable the *_at evaluators clamp at 0.
The pre-clamp numerators are exposed separately for diagnostics and for the
scaling-law checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize as _sopt

from .distributions import (
    LevyLaw,
    gumbel_from_min_levy,
    levy_cdf,
    min_of_levy_cdf,
)
from .entropy import (
    gaussian_entropy_avg_noise,
    gumbel_conditional_entropy,
    levy_conditional_entropy,
)
from .special import DomainError

_LOG2E = math.log2(math.e)

BOUND_KINDS = ("single_lb", "single_ub", "diversity_ub", "fa_lb", "fa_ub", "avg_lb", "avg_ub")

# Below this particle count the Gumbel/Gaussian limits backing the FA and
# average receivers have no stated validity; results carry a warning note.
ASYMPTOTIC_M_GUARD = 1000


@dataclass(frozen=True)
class ChannelParams:
    """Physical and operational tuple of one channel configuration.

    c: Levy scale in seconds (d^2 / 2D); tau_x: symbol interval in seconds;
    tau_n: particle lifetime in seconds; m: particles per channel use.
    """

    c: float
    tau_x: float
    tau_n: float
    m: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise DomainError(f"ChannelParams requires c > 0, got c={self.c!r}")
        if not (math.isfinite(self.tau_x) and self.tau_x >= 0.0):
            raise DomainError(f"ChannelParams requires tau_x >= 0, got tau_x={self.tau_x!r}")
        if not (math.isfinite(self.tau_n) and self.tau_n > 0.0):
            raise DomainError(f"ChannelParams requires tau_n > 0, got tau_n={self.tau_n!r}")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"ChannelParams requires integer m >= 1, got m={self.m!r}")

    @property
    def use_duration(self) -> float:
        return self.tau_x + self.tau_n


@dataclass(frozen=True)
class BoundResult:
    """A bound value plus the (tau_x, tau_n) it was evaluated or maximized at."""

    bits_per_sec: float
    argmax_tau_x: float
    argmax_tau_n: float
    kind: str
    optimizer_iterations: int = 0
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "bits_per_sec": self.bits_per_sec,
            "argmax_tau_x": self.argmax_tau_x,
            "argmax_tau_n": self.argmax_tau_n,
            "optimizer_iterations": self.optimizer_iterations,
            "notes": list(self.notes),
        }


def m_function(tau_x: float, h_cond: float) -> float:
    """0.5 log2(tau_x^2 + 2^(2 h)) -- the entropy-power floor of the received
    time's entropy; equals h_cond at tau_x = 0 and log2(tau_x) for large tau_x."""
    if tau_x < 0.0:
        raise DomainError(f"m_function requires tau_x >= 0, got {tau_x!r}")
    if tau_x == 0.0:
        return h_cond
    return 0.5 * float(np.logaddexp2(2.0 * math.log2(tau_x), 2.0 * h_cond))


def v_binomial(p, m: int, i: int):
    """Binomial(m, p) mass at i.  Exact for exact p (e.g. Fraction)."""
    if not (0 <= i <= m):
        raise DomainError(f"v_binomial requires 0 <= i <= m, got i={i!r}, m={m!r}")
    return math.comb(m, i) * p**i * (1 - p) ** (m - i)


# ---------------------------------------------------------------------------
# Single-particle bounds
# ---------------------------------------------------------------------------

def _require_m1(params: ChannelParams, what: str):
    if params.m != 1:
        raise DomainError(f"{what} is a single-particle bound; got m={params.m!r}")


def single_lb_numerator(params: ChannelParams) -> float:
    """(m(tau_x, tau_n, Tn) - h(Tn|Tn<=tau_n)) F(tau_n), pre-clamp, in bits."""
    _require_m1(params, "single_lb")
    f_tau = levy_cdf(LevyLaw(c=params.c), params.tau_n)
    if f_tau <= 0.0:
        return 0.0
    h = levy_conditional_entropy(params.c, params.tau_n)
    return (m_function(params.tau_x, h) - h) * f_tau


def single_lb_at(params: ChannelParams) -> float:
    """Entropy-power lower bound at fixed (tau_x, tau_n), bits/sec."""
    return max(0.0, single_lb_numerator(params)) / params.use_duration


def single_ub_numerator(params: ChannelParams) -> float:
    _require_m1(params, "single_ub")
    f_tau = levy_cdf(LevyLaw(c=params.c), params.tau_n)
    if f_tau <= 0.0:
        return 0.0
    h = levy_conditional_entropy(params.c, params.tau_n)
    return (math.log2(params.use_duration) - h) * f_tau


def single_ub_at(params: ChannelParams) -> float:
    """Support upper bound at fixed (tau_x, tau_n), bits/sec."""
    return max(0.0, single_ub_numerator(params)) / params.use_duration


def single_ub_explicit(c: float, tau_n: float) -> tuple[float, float]:
    """Closed-form maximum over tau_x of the single-particle upper bound.

    The stationary point of (log2(y) - h) F / y in y = tau_x + tau_n sits at
    y* = e 2^h (base-2 logs bring a log2(e) factor into the derivative), so

        tau_x* = max(0, eps - tau_n),  eps = e 2^h,

    and the value is log2(e) F / eps on the interior branch, else the tau_x=0
    endpoint value (log2(tau_n) - h) F / tau_n.
    """
    f_tau = levy_cdf(LevyLaw(c=c), tau_n)
    if f_tau <= 0.0:
        return 0.0, 0.0
    h = levy_conditional_entropy(c, tau_n)
    eps = math.e * 2.0**h
    if eps > tau_n:
        return _LOG2E * f_tau / eps, eps - tau_n
    return max(0.0, (math.log2(tau_n) - h)) * f_tau / tau_n, 0.0


def lb_stationarity_residual(c: float, tau_n: float, tau_x: float) -> float:
    """Residual of the lower bound's interior stationarity equation in tau_x:

        h (4^h + tau_x^2) + tau_x (tau_x + tau_n) log2(e)
            - 0.5 (4^h + tau_x^2) log2(4^h + tau_x^2) = 0,

    with h = h(Tn|Tn<=tau_n).  Zero exactly where d/dtau_x of the bound is
    zero (the log2(e) factor is the derivative of log2 in base-2 units).
    """
    h = levy_conditional_entropy(c, tau_n)
    a = 4.0**h + tau_x * tau_x
    return h * a + tau_x * (tau_x + tau_n) * _LOG2E - 0.5 * a * math.log2(a)


def single_lb_stationary_tau_x(c: float, tau_n: float) -> tuple[float, bool]:
    """Maximizing tau_x of the single-particle lower bound, via the
    stationarity equation.  Returns (tau_x, from_root): from_root is False
    when no bracketing sign change was found and the direct 1-D search value
    is returned instead.
    """
    from .optimize import SearchSpec, maximize_1d

    def objective(tau_x: float) -> float:
        return single_lb_at(ChannelParams(c=c, tau_x=tau_x, tau_n=tau_n))

    spec = SearchSpec(lo=1e-6 * c, hi=1e4 * c, coarse_points=96, refine_tol=1e-12 * c)
    x_direct, _ = maximize_1d(objective, spec)

    phi = lambda t: lb_stationarity_residual(c, tau_n, t)
    lo, hi = x_direct / 2.0, x_direct * 2.0
    for _ in range(5):
        if phi(lo) * phi(hi) < 0.0:
            root = _sopt.brentq(phi, lo, hi, xtol=1e-300, rtol=8.9e-16)
            return float(root), True
        lo /= 2.0
        hi *= 2.0
    return x_direct, False


# ---------------------------------------------------------------------------
# Diversity / first-arrival / average-receiver bounds
# ---------------------------------------------------------------------------

def diversity_ub_numerator(params: ChannelParams) -> float:
    f_tau = levy_cdf(LevyLaw(c=params.c), params.tau_n)
    if f_tau <= 0.0:
        return 0.0
    h = levy_conditional_entropy(params.c, params.tau_n)
    return (math.log2(params.use_duration) - h) * params.m * f_tau


def diversity_ub_at(params: ChannelParams) -> float:
    """All-arrivals upper bound: M times the single-particle numerator scaling."""
    return max(0.0, diversity_ub_numerator(params)) / params.use_duration


def _fa_entropy_and_mass(params: ChannelParams) -> tuple[float, float]:
    if params.m < 2:
        raise DomainError(f"first-arrival bounds require m >= 2, got m={params.m!r}")
    law = gumbel_from_min_levy(params.c, params.m)
    # Arrival mass from the exact min law; only the entropy uses the Gumbel limit.
    f_min = min_of_levy_cdf(LevyLaw(c=params.c), params.m, params.tau_n)
    if f_min <= 0.0:
        return math.nan, 0.0
    h = gumbel_conditional_entropy(law, params.tau_n)
    return h, f_min


def fa_lb_numerator(params: ChannelParams) -> float:
    h, f_min = _fa_entropy_and_mass(params)
    if f_min <= 0.0:
        return 0.0
    return (m_function(params.tau_x, h) - h) * f_min


def fa_lb_at(params: ChannelParams) -> float:
    """First-arrival receiver lower bound (large-M Gumbel regime), bits/sec."""
    return max(0.0, fa_lb_numerator(params)) / params.use_duration


def fa_ub_numerator(params: ChannelParams) -> float:
    h, f_min = _fa_entropy_and_mass(params)
    if f_min <= 0.0:
        return 0.0
    return (math.log2(params.use_duration) - h) * f_min


def fa_ub_at(params: ChannelParams) -> float:
    """First-arrival receiver upper bound (large-M Gumbel regime), bits/sec."""
    return max(0.0, fa_ub_numerator(params)) / params.use_duration


def avg_lb_numerator(params: ChannelParams) -> float:
    f_tau = levy_cdf(LevyLaw(c=params.c), params.tau_n)
    if f_tau <= 0.0:
        return 0.0
    h = gaussian_entropy_avg_noise(params.c, params.tau_n, params.m)
    return m_function(params.tau_x, h) - h


def avg_lb_at(params: ChannelParams) -> float:
    """Average-arrival receiver lower bound (large-M Gaussian regime), bits/sec."""
    return max(0.0, avg_lb_numerator(params)) / params.use_duration


def avg_ub_numerator(params: ChannelParams) -> float:
    f_tau = levy_cdf(LevyLaw(c=params.c), params.tau_n)
    if f_tau <= 0.0:
        return 0.0
    h = gaussian_entropy_avg_noise(params.c, params.tau_n, params.m)
    return math.log2(params.use_duration) - h


def avg_ub_at(params: ChannelParams) -> float:
    """Average-arrival receiver upper bound (large-M Gaussian regime), bits/sec."""
    return max(0.0, avg_ub_numerator(params)) / params.use_duration


_EVALUATORS = {
    "single_lb": (single_lb_at, single_lb_numerator),
    "single_ub": (single_ub_at, single_ub_numerator),
    "diversity_ub": (diversity_ub_at, diversity_ub_numerator),
    "fa_lb": (fa_lb_at, fa_lb_numerator),
    "fa_ub": (fa_ub_at, fa_ub_numerator),
    "avg_lb": (avg_lb_at, avg_lb_numerator),
    "avg_ub": (avg_ub_at, avg_ub_numerator),
}


def bound_at(kind: str, params: ChannelParams) -> float:
    """Evaluate a bound kind at fixed parameters, bits/sec."""
    if kind not in _EVALUATORS:
        raise DomainError(f"unknown bound kind {kind!r}; choose from {BOUND_KINDS}")
    return float(_EVALUATORS[kind][0](params))


def regime_notes(kind: str, params: ChannelParams) -> tuple:
    """Diagnostic notes attached to a BoundResult for this evaluation."""
    notes = []
    if _EVALUATORS[kind][1](params) < 0.0:
        notes.append("clamped_negative_numerator")
    if kind.startswith(("fa_", "avg_")) and params.m < ASYMPTOTIC_M_GUARD:
        notes.append(f"asymptotic_regime_guard:m={params.m}<{ASYMPTOTIC_M_GUARD}")
    if kind.startswith("fa_"):
        alpha = gumbel_from_min_levy(params.c, params.m).alpha
        if params.tau_n < alpha:
            notes.append("gumbel_conditioning_below_location")
    return tuple(notes)


def evaluate(kind: str, params: ChannelParams) -> BoundResult:
    """Bound value at fixed parameters, wrapped with diagnostics."""
    value = bound_at(kind, params)
    return BoundResult(
        bits_per_sec=value,
        argmax_tau_x=params.tau_x,
        argmax_tau_n=params.tau_n,
        kind=kind,
        optimizer_iterations=0,
        notes=regime_notes(kind, params),
    )
