"""Deterministic scalar and bivariate maximization of bound surfaces.

Coarse grid scan (linear or logarithmic) followed by golden-section
refinement of the best cell; the 2-D variant runs coordinate descent with
the same 1-D refinement per axis.  The surfaces this serves are smooth and
near-unimodal along axes, and determinism matters more than iteration count:
identical specs produce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundResult, ChannelParams, bound_at, regime_notes
from .special import DomainError, NumericError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchSpec:
    lo: float
    hi: float
    coarse_points: int = 64
    refine_tol: float = 0.0  # 0 means the default 1e-7 * (hi - lo)
    scale: str = "logarithmic"

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise DomainError(f"SearchSpec requires lo < hi, got {self.lo!r}, {self.hi!r}")
        if self.coarse_points < 8:
            raise DomainError(f"SearchSpec requires coarse_points >= 8, got {self.coarse_points!r}")
        if self.refine_tol < 0.0:
            raise DomainError(f"SearchSpec requires refine_tol >= 0, got {self.refine_tol!r}")
        if self.scale not in ("linear", "logarithmic"):
            raise DomainError(f"SearchSpec.scale must be linear or logarithmic, got {self.scale!r}")
        if self.scale == "logarithmic" and self.lo <= 0.0:
            raise DomainError("logarithmic SearchSpec requires lo > 0")

    @property
    def tol(self) -> float:
        return self.refine_tol if self.refine_tol > 0.0 else 1e-7 * (self.hi - self.lo)

    def grid(self) -> np.ndarray:
        if self.scale == "logarithmic":
            return np.geomspace(self.lo, self.hi, self.coarse_points)
        return np.linspace(self.lo, self.hi, self.coarse_points)


def default_tau_x_spec(c: float) -> SearchSpec:
    """tau_x in [1e-4 c, 1e3 c]: the c-scaling keeps Levy-family optima interior."""
    return SearchSpec(lo=1e-4 * c, hi=1e3 * c)


def default_tau_n_spec(c: float) -> SearchSpec:
    return SearchSpec(lo=1e-4 * c, hi=1e2 * c)


def _check_value(f, x: float) -> float:
    v = f(x)
    if not math.isfinite(v):
        raise NumericError(f"objective returned non-finite value {v!r} at x={x!r}")
    return v


def _golden(f, a: float, b: float, tol: float) -> tuple[float, float]:
    # Golden-section maximization on [a, b] down to bracket width tol.
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = _check_value(f, c)
    fd = _check_value(f, d)
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _check_value(f, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _check_value(f, d)
    x = 0.5 * (a + b)
    return x, _check_value(f, x)


def maximize_1d(f, spec: SearchSpec) -> tuple[float, float]:
    """Coarse grid scan plus golden refinement; f(x_star) never falls below
    the best coarse-grid value."""
    grid = spec.grid()
    vals = np.array([_check_value(f, x) for x in grid])
    i = int(np.argmax(vals))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, len(grid) - 1)])
    x, v = _golden(f, a, b, spec.tol)
    if vals[i] >= v:
        return float(grid[i]), float(vals[i])
    return x, v


def maximize_2d(f, spec_x: SearchSpec, spec_y: SearchSpec) -> tuple[float, float, float]:
    """Coarse product grid then coordinate descent with golden refinement,
    until both coordinates move by less than their refine tolerance."""
    gx, gy = spec_x.grid(), spec_y.grid()
    best_v, best_x, best_y = -math.inf, float(gx[0]), float(gy[0])
    for y in gy:
        for x in gx:
            v = f(float(x), float(y))
            if not math.isfinite(v):
                raise NumericError(f"objective returned non-finite value {v!r} at ({x!r}, {y!r})")
            if v > best_v:
                best_v, best_x, best_y = v, float(x), float(y)
    x, y = best_x, best_y
    for _ in range(60):
        x2, _ = maximize_1d(lambda t: f(t, y), spec_x)
        y2, v = maximize_1d(lambda t: f(x2, t), spec_y)
        moved_x, moved_y = abs(x2 - x), abs(y2 - y)
        x, y = x2, y2
        if moved_x < spec_x.tol and moved_y < spec_y.tol:
            break
    vxy = f(x, y)
    if vxy >= best_v:
        return x, y, vxy
    return best_x, best_y, best_v


def maximize_bound(
    kind: str,
    c: float,
    m: int = 1,
    tau_x: float | None = None,
    tau_n: float | None = None,
    spec_x: SearchSpec | None = None,
    spec_n: SearchSpec | None = None,
) -> BoundResult:
    """Maximize a bound over whichever of tau_x / tau_n is left unspecified.

    Fixing both evaluates the bound; fixing neither runs the joint
    coordinate-descent search.  A maximizer landing on its search boundary is
    flagged in the result notes rather than extrapolated.
    """
    spec_x = spec_x or default_tau_x_spec(c)
    spec_n = spec_n or default_tau_n_spec(c)
    evals = 0

    def counted(fn):
        def wrapper(*args):
            nonlocal evals
            evals += 1
            return fn(*args)
        return wrapper

    notes: list[str] = []
    if tau_x is not None and tau_n is not None:
        params = ChannelParams(c=c, tau_x=tau_x, tau_n=tau_n, m=m)
        value, x_star, n_star = bound_at(kind, params), tau_x, tau_n
    elif tau_n is not None:
        obj = counted(lambda t: bound_at(kind, ChannelParams(c=c, tau_x=t, tau_n=tau_n, m=m)))
        x_star, value = maximize_1d(obj, spec_x)
        n_star = tau_n
        if x_star >= spec_x.hi * (1.0 - 1e-12):
            notes.append("tau_x_boundary_hit")
    elif tau_x is not None:
        obj = counted(lambda t: bound_at(kind, ChannelParams(c=c, tau_x=tau_x, tau_n=t, m=m)))
        n_star, value = maximize_1d(obj, spec_n)
        x_star = tau_x
        if n_star >= spec_n.hi * (1.0 - 1e-12):
            notes.append("tau_n_boundary_hit")
    else:
        obj = counted(
            lambda x, y: bound_at(kind, ChannelParams(c=c, tau_x=x, tau_n=y, m=m))
        )
        x_star, n_star, value = maximize_2d(obj, spec_x, spec_n)
        if x_star >= spec_x.hi * (1.0 - 1e-12):
            notes.append("tau_x_boundary_hit")
        if n_star >= spec_n.hi * (1.0 - 1e-12):
            notes.append("tau_n_boundary_hit")

    params = ChannelParams(c=c, tau_x=x_star, tau_n=n_star, m=m)
    notes.extend(regime_notes(kind, params))
    return BoundResult(
        bits_per_sec=value,
        argmax_tau_x=x_star,
        argmax_tau_n=n_star,
        kind=kind,
        optimizer_iterations=evals,
        notes=tuple(notes),
    )
