"""Partial and conditional entropies against quadrature of their defining
integrals, plus the closed-form limits.

The tau -> infinity check: the partial entropy approaches the full Levy
entropy at O(log(tau)/sqrt(tau)); the true gap at tau = 1e8 is 3.63e-3
(mpmath), reaching 1e-4 only around tau = 1e12.  The tests pin the closed
form to the true tau = 1e8 value and check the 1e-4 window at tau = 1e12.
"""

import math

import numpy as np
import pytest

from mtcap import (
    DomainError,
    GumbelLaw,
    LevyLaw,
    TruncatedLevyLaw,
    conditional_entropy,
    gaussian_entropy_avg_noise,
    gumbel_conditional_entropy,
    gumbel_entropy,
    gumbel_from_min_levy,
    levy_cdf,
    levy_conditional_entropy,
    levy_entropy,
    partial_entropy_gumbel,
    partial_entropy_levy,
    trunc_levy_var,
)
from conftest import (
    eta_gumbel_quad,
    eta_levy_quad,
    gumbel_cond_entropy_quad,
    levy_cond_entropy_quad,
)

LOG2E = math.log2(math.e)
EULER_GAMMA = float(np.euler_gamma)

LEVY_GRID = [(c, tau) for c in (0.1, 1.0, 8.0) for tau in (0.05, 0.5, 5.0)]


# --- Levy partial entropy ----------------------------------------------------

def test_eta_levy_frozen_values():
    assert abs(partial_entropy_levy(1.0, 1.0) - 0.47041022626951913) < 1e-12
    assert abs(partial_entropy_levy(0.1, 0.05) + 0.31228353030208665) < 1e-12
    # deep truncation: value ~ 1e-34 still carries full relative precision
    ref = 1.2465086944193138e-34
    assert abs(partial_entropy_levy(8.0, 0.05) - ref) / ref < 1e-9


@pytest.mark.parametrize("c,tau", LEVY_GRID)
def test_eta_levy_matches_quadrature(c, tau):
    oracle = eta_levy_quad(c, tau)
    closed = partial_entropy_levy(c, tau)
    assert abs(closed - oracle) / max(abs(oracle), 1e-300) < 1e-7


def test_eta_levy_route_seam_continuous():
    # hyp route below w = 5 and gamma route above agree through the switch
    for w in (4.5, 4.9, 5.1, 5.5):
        c, tau = 1.0, 1.0 / (2.0 * w)
        oracle = eta_levy_quad(c, tau)
        assert abs(partial_entropy_levy(c, tau) - oracle) / abs(oracle) < 1e-8


def test_eta_levy_full_line_limit():
    h = levy_entropy(LevyLaw(c=1.0))
    # true value at tau = 1e8 (40-digit quadrature): gap 3.632e-3 from h
    ref = 4.7925831223136513
    assert abs(partial_entropy_levy(1.0, 1e8) - ref) / ref < 1e-7
    gaps = [h - partial_entropy_levy(1.0, tau) for tau in (1e6, 1e8, 1e10, 1e12)]
    assert all(a > b > 0.0 for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-4


def test_eta_levy_domain():
    with pytest.raises(DomainError):
        partial_entropy_levy(0.0, 1.0)
    with pytest.raises(DomainError):
        partial_entropy_levy(1.0, -1.0)


# --- conditional entropy -----------------------------------------------------

def test_conditional_entropy_full_mass_is_identity():
    assert conditional_entropy(1.234, 1.0) == 1.234


def test_conditional_entropy_domain():
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            conditional_entropy(1.0, bad)


@pytest.mark.parametrize("c,tau", LEVY_GRID)
def test_levy_conditional_entropy_matches_renormalized_quadrature(c, tau):
    # the conditioned density is well-scaled even where F(tau) ~ 1e-36
    oracle = levy_cond_entropy_quad(c, tau)
    val = levy_conditional_entropy(c, tau)
    assert abs(val - oracle) / max(abs(oracle), 1e-12) < 1e-7


def test_levy_conditional_entropy_deep_truncation_support_bound():
    # h <= log2(support) even where F ~ 4e-36
    h = levy_conditional_entropy(8.0, 0.05)
    assert h <= math.log2(0.05)
    assert math.isfinite(h)


def test_levy_conditional_entropy_support_bound_grid():
    for c, tau in LEVY_GRID:
        assert levy_conditional_entropy(c, tau) <= math.log2(tau) + 1e-12


def test_levy_conditional_entropy_monotone_in_tau():
    for c in (0.1, 1.0, 8.0):
        taus = np.geomspace(0.01 * c, 100.0 * c, 40)
        vals = [levy_conditional_entropy(c, t) for t in taus]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_levy_conditional_entropy_limit_is_full_entropy():
    assert abs(levy_conditional_entropy(1.0, 1e12) - levy_entropy(LevyLaw(c=1.0))) < 2e-4


# --- Gumbel partial entropy --------------------------------------------------

def test_eta_gumbel_frozen_values():
    assert abs(partial_entropy_gumbel(GumbelLaw(0.0, 1.0), 0.0) - 1.5304696415228714) < 1e-12
    law6 = gumbel_from_min_levy(1.0, 10**6)
    assert abs(partial_entropy_gumbel(law6, law6.alpha) + 3.7326453809638283) < 1e-10


def test_eta_gumbel_full_line_limit():
    for alpha, beta in ((0.0, 1.0), (2.198, 0.4), (0.042, 0.0031)):
        law = GumbelLaw(alpha, beta)
        expect = math.log2(beta) + (1.0 + EULER_GAMMA) * LOG2E
        assert abs(gumbel_entropy(law) - expect) < 1e-12
        assert abs(partial_entropy_gumbel(law, alpha + 40.0 * beta) - expect) < 1e-12


@pytest.mark.parametrize(
    "alpha,beta,tau",
    [
        (0.0, 1.0, 0.0),
        (0.0, 1.0, 2.0),
        (0.0, 1.0, -3.0),
        (2.198, 0.4, 2.198),
        (2.198, 0.4, 1.0),
        (0.042, 0.0031, 0.03),
        (0.042, 0.0031, 0.073),
    ],
)
def test_eta_gumbel_matches_quadrature(alpha, beta, tau):
    law = GumbelLaw(alpha, beta)
    oracle = eta_gumbel_quad(law, tau)
    assert abs(partial_entropy_gumbel(law, tau) - oracle) / max(abs(oracle), 1e-300) < 1e-7


def test_eta_gumbel_deep_tail_relative_precision():
    # tau far below alpha: eta ~ e^((tau-alpha)/beta); the compensated form
    # keeps relative accuracy where the printed term arrangement cancels out.
    law = GumbelLaw(0.0, 1.0)
    oracle = eta_gumbel_quad(law, -30.0)
    val = partial_entropy_gumbel(law, -30.0)
    assert oracle > 0.0
    assert abs(val - oracle) / oracle < 1e-7
    assert partial_entropy_gumbel(law, -600.0) >= 0.0  # underflows cleanly


def test_gumbel_conditional_entropy_matches_quadrature():
    law = gumbel_from_min_levy(1.0, 10**6)
    for tau in (0.03, 0.042, 0.073, 0.5):
        t = (tau - law.alpha) / law.beta
        f_tau = -math.expm1(-math.exp(min(t, 700.0)))
        oracle = gumbel_cond_entropy_quad(law, tau, f_tau)
        val = gumbel_conditional_entropy(law, tau)
        assert abs(val - oracle) / max(abs(oracle), 1e-12) < 1e-7


# --- Gaussian (average receiver) entropy --------------------------------------

def test_gaussian_entropy_doubling_m():
    h1 = gaussian_entropy_avg_noise(1.0, 0.5, 10**4)
    h2 = gaussian_entropy_avg_noise(1.0, 0.5, 2 * 10**4)
    assert abs((h1 - h2) - 0.5) < 1e-12


def test_gaussian_entropy_composition():
    for m in (1, 10**6):
        var = trunc_levy_var(TruncatedLevyLaw(c=1.0, tau=0.5))
        f = levy_cdf(LevyLaw(c=1.0), 0.5)
        expect = 0.5 * math.log2(2.0 * math.pi * math.e * var / (m * f))
        assert abs(gaussian_entropy_avg_noise(1.0, 0.5, m) - expect) < 1e-12


def test_gaussian_entropy_domain():
    with pytest.raises(DomainError):
        gaussian_entropy_avg_noise(1.0, 0.5, 0)
