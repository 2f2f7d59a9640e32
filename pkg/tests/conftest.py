"""Shared quadrature oracles, independent of the library's evaluation routes.

Every closed form in the package is checked against direct adaptive
integration of its defining integral.  The entropy oracle integrates in
x-space and splits (0, tau] at c/100 where the -f log f integrand turns over;
tolerances are driven to ~1e-11 so the oracles dominate the assertions.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from mtcap import LevyLaw, TruncatedLevyLaw, gumbel_pdf, levy_pdf, trunc_levy_pdf

LOG2E = math.log2(math.e)


def quad_tight(fn, lo, hi, points=None, limit=400):
    val, _ = integrate.quad(fn, lo, hi, points=points, limit=limit, epsabs=0.0, epsrel=1e-11)
    return val


def eta_levy_quad(c: float, tau: float) -> float:
    """-integral_0^tau f log2 f dx by adaptive quadrature, split at c/100."""
    law = LevyLaw(c=c)

    def integrand(x):
        f = levy_pdf(law, x)
        return 0.0 if f <= 0.0 else -f * math.log2(f)

    split = c / 100.0
    if 0.0 < split < tau:
        return quad_tight(integrand, 0.0, split) + quad_tight(integrand, split, tau)
    return quad_tight(integrand, 0.0, tau)


def levy_cond_entropy_quad(c: float, tau: float) -> float:
    """Entropy of the renormalized (conditioned) Levy density, by quadrature."""
    law = TruncatedLevyLaw(c=c, tau=tau)

    def integrand(x):
        f = trunc_levy_pdf(law, x)
        return 0.0 if f <= 0.0 else -f * math.log2(f)

    split = c / 100.0
    pts = [split] if 0.0 < split < tau else None
    return quad_tight(integrand, 0.0, tau, points=pts)


def eta_gumbel_quad(law, tau: float) -> float:
    def integrand(x):
        f = gumbel_pdf(law, x)
        return 0.0 if f <= 0.0 else -f * math.log2(f)

    lo = law.alpha - 60.0 * law.beta
    return quad_tight(integrand, lo, tau) if tau > lo else 0.0


def gumbel_cond_entropy_quad(law, tau: float, f_tau: float) -> float:
    def integrand(x):
        f = gumbel_pdf(law, x) / f_tau
        return 0.0 if f <= 0.0 else -f * math.log2(f)

    lo = law.alpha - 60.0 * law.beta
    return quad_tight(integrand, lo, tau)


def trunc_moment_quad(c: float, tau: float, k: int) -> float:
    """k-th moment of the truncated law by quadrature of x^k f(x)."""
    law = TruncatedLevyLaw(c=c, tau=tau)
    split = min(c / 100.0, 0.9 * tau)
    return quad_tight(lambda x: x**k * trunc_levy_pdf(law, x), 0.0, tau, points=[split])


@pytest.fixture(scope="session")
def rng_factory():
    def make(seed: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(seed))

    return make
